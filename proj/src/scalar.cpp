#include "acute/scalar.hpp"

#include <charconv>
#include <cstring>
#include <cmath>

namespace acute {

std::string_view kind_name(ScalarKind k)
{
    switch (k) {
    case ScalarKind::Integer: return "int";
    case ScalarKind::Rational: return "rat";
    case ScalarKind::Float64: return "f64";
    }
    return "?";
}

ScalarKind parse_kind(std::string_view s)
{
    if (s == "int") return ScalarKind::Integer;
    if (s == "rat") return ScalarKind::Rational;
    if (s == "f64") return ScalarKind::Float64;
    throw ContractError("unknown scalar kind '" + std::string(s) + "'");
}

Scalar Scalar::rational(long long p, long long q)
{
    if (q == 0) throw ContractError("zero denominator");
    return Scalar(Rational(BigInt(p), BigInt(q)));
}

ScalarKind Scalar::kind() const
{
    switch (v_.index()) {
    case 0: return ScalarKind::Integer;
    case 1: return ScalarKind::Rational;
    default: return ScalarKind::Float64;
    }
}

const BigInt& Scalar::as_integer() const
{
    if (auto p = std::get_if<BigInt>(&v_)) return *p;
    throw ContractError("scalar is not an integer");
}

const Rational& Scalar::as_rational() const
{
    if (auto p = std::get_if<Rational>(&v_)) return *p;
    throw ContractError("scalar is not a rational");
}

double Scalar::as_float() const
{
    if (auto p = std::get_if<double>(&v_)) return *p;
    throw ContractError("scalar is not a float");
}

Rational exact_from_double(double x)
{
    if (!std::isfinite(x)) throw ContractError("non-finite float has no exact value");
    int e = 0;
    double m = std::frexp(x, &e);
    // m * 2^53 is an integer for every finite double
    auto mant = static_cast<long long>(std::ldexp(m, 53));
    e -= 53;
    Rational r{BigInt(mant)};
    if (e > 0) r *= Rational(BigInt(1) << e);
    else if (e < 0) r /= Rational(BigInt(1) << (-e));
    return r;
}

Rational Scalar::to_rational() const
{
    switch (v_.index()) {
    case 0: return Rational(std::get<0>(v_));
    case 1: return std::get<1>(v_);
    default: return exact_from_double(std::get<2>(v_));
    }
}

double Scalar::to_double() const
{
    switch (v_.index()) {
    case 0: return std::get<0>(v_).convert_to<double>();
    case 1: return std::get<1>(v_).convert_to<double>();
    default: return std::get<2>(v_);
    }
}

Scalar Scalar::to_kind(ScalarKind k) const
{
    if (k == kind()) return *this;
    switch (k) {
    case ScalarKind::Integer: {
        Rational r = to_rational();
        if (denominator(r) != 1) throw ContractError("value " + str() + " is not an integer");
        return Scalar(numerator(r));
    }
    case ScalarKind::Rational: return Scalar(to_rational());
    case ScalarKind::Float64: return Scalar(to_double());
    }
    return *this;
}

namespace {

void require_same(const Scalar& a, const Scalar& b)
{
    if (a.kind() != b.kind())
        throw ContractError(std::string("mixed-kind arithmetic: ") + std::string(kind_name(a.kind())) + " vs " +
                            std::string(kind_name(b.kind())));
}

}  // namespace

Scalar Scalar::operator+(const Scalar& o) const
{
    require_same(*this, o);
    switch (v_.index()) {
    case 0: return Scalar(BigInt(std::get<0>(v_) + std::get<0>(o.v_)));
    case 1: return Scalar(Rational(std::get<1>(v_) + std::get<1>(o.v_)));
    default: return Scalar(std::get<2>(v_) + std::get<2>(o.v_));
    }
}

Scalar Scalar::operator-(const Scalar& o) const
{
    require_same(*this, o);
    switch (v_.index()) {
    case 0: return Scalar(BigInt(std::get<0>(v_) - std::get<0>(o.v_)));
    case 1: return Scalar(Rational(std::get<1>(v_) - std::get<1>(o.v_)));
    default: return Scalar(std::get<2>(v_) - std::get<2>(o.v_));
    }
}

Scalar Scalar::operator*(const Scalar& o) const
{
    require_same(*this, o);
    switch (v_.index()) {
    case 0: return Scalar(BigInt(std::get<0>(v_) * std::get<0>(o.v_)));
    case 1: return Scalar(Rational(std::get<1>(v_) * std::get<1>(o.v_)));
    default: return Scalar(std::get<2>(v_) * std::get<2>(o.v_));
    }
}

Scalar Scalar::operator-() const
{
    switch (v_.index()) {
    case 0: return Scalar(BigInt(-std::get<0>(v_)));
    case 1: return Scalar(Rational(-std::get<1>(v_)));
    default: return Scalar(-std::get<2>(v_));
    }
}

int Scalar::sign() const
{
    switch (v_.index()) {
    case 0: return std::get<0>(v_).sign();
    case 1: return std::get<1>(v_).sign();
    default: {
        double x = std::get<2>(v_);
        return (x > 0) - (x < 0);
    }
    }
}

bool Scalar::operator==(const Scalar& o) const
{
    if (kind() != o.kind()) return false;
    if (v_.index() == 2) {
        double a = std::get<2>(v_), b = std::get<2>(o.v_);
        return std::memcmp(&a, &b, sizeof a) == 0;
    }
    return v_ == o.v_;
}

bool Scalar::operator<(const Scalar& o) const
{
    require_same(*this, o);
    return v_ < o.v_;
}

std::string format_double(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_rational(const Rational& r)
{
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string Scalar::str() const
{
    switch (v_.index()) {
    case 0: return std::get<0>(v_).str();
    case 1: return format_rational(std::get<1>(v_));
    default: return format_double(std::get<2>(v_));
    }
}

namespace {

BigInt parse_bigint(std::string_view s)
{
    std::string_view digits = s;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.remove_prefix(1);
    if (digits.empty()) throw ContractError("empty integer");
    for (char c : digits)
        if (c < '0' || c > '9') throw ContractError("malformed integer '" + std::string(s) + "'");
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
}

}  // namespace

Rational parse_rational(std::string_view s)
{
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_bigint(s));
    BigInt p = parse_bigint(s.substr(0, slash));
    BigInt q = parse_bigint(s.substr(slash + 1));
    if (q <= 0) throw ContractError("denominator must be positive in '" + std::string(s) + "'");
    Rational r(p, q);
    if (numerator(r) != p || denominator(r) != q)
        throw ContractError("rational '" + std::string(s) + "' is not in lowest terms");
    return r;
}

double parse_double(std::string_view s)
{
    double x = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(x))
        throw ContractError("malformed float '" + std::string(s) + "'");
    return x;
}

Scalar Scalar::parse(std::string_view text, ScalarKind k)
{
    switch (k) {
    case ScalarKind::Integer: return Scalar(parse_bigint(text));
    case ScalarKind::Rational: return Scalar(parse_rational(text));
    case ScalarKind::Float64: return Scalar(parse_double(text));
    }
    throw ContractError("unknown kind");
}

}  // namespace acute
