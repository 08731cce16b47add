#include "acute/pointset_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace acute {

namespace {

std::string trim(std::string s)
{
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return s.substr(i);
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& msg)
{
    throw ContractError(source + ":" + std::to_string(line) + ": " + msg);
}

std::string field(const std::string& tok, const std::string& key, const std::string& source)
{
    if (tok.rfind(key + "=", 0) != 0) fail(source, 2, "expected " + key + "=...");
    return tok.substr(key.size() + 1);
}

std::size_t parse_count(const std::string& v, const std::string& source, const char* what)
{
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) fail(source, 2, std::string("bad ") + what);
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        fail(source, 2, std::string("bad ") + what);
    }
}

}  // namespace

std::string format_pointset(const PointSet& X)
{
    std::ostringstream os;
    os << "acuteset-pointset v1\n";
    os << "dim=" << X.dim() << " count=" << X.size() << " scalar=" << kind_name(X.kind()) << " raw=" << (X.raw() ? 1 : 0)
       << "\n";
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (std::size_t j = 0; j < X.dim(); ++j) os << (j ? " " : "") << X.at(i, j).str();
        os << "\n";
    }
    return os.str();
}

void write_pointset(const PointSet& X, const std::string& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ContractError("cannot write " + path);
    f << format_pointset(X);
    if (!f) throw ContractError("write failed: " + path);
}

PointSet parse_pointset(std::istream& in, const std::string& source)
{
    std::string line;
    if (!std::getline(in, line) || trim(line) != "acuteset-pointset v1") fail(source, 1, "expected header 'acuteset-pointset v1'");
    if (!std::getline(in, line)) fail(source, 2, "missing dimension line");
    std::istringstream hs(trim(line));
    std::string t1, t2, t3, t4, extra;
    if (!(hs >> t1 >> t2 >> t3 >> t4) || (hs >> extra)) fail(source, 2, "expected 'dim=<d> count=<N> scalar=<kind> raw=<0|1>'");
    std::size_t d = parse_count(field(t1, "dim", source), source, "dim");
    std::size_t n = parse_count(field(t2, "count", source), source, "count");
    ScalarKind kind;
    try {
        kind = parse_kind(field(t3, "scalar", source));
    } catch (const ContractError&) {
        fail(source, 2, "scalar must be int, rat or f64");
    }
    std::string r = field(t4, "raw", source);
    if (r != "0" && r != "1") fail(source, 2, "raw must be 0 or 1");
    if (d == 0) fail(source, 2, "dim must be positive");

    std::vector<Scalar> coords;
    coords.reserve(n * d);
    std::size_t lineno = 2;
    for (std::size_t i = 0; i < n; ++i) {
        ++lineno;
        if (!std::getline(in, line)) fail(source, lineno, "expected " + std::to_string(n) + " rows, got " + std::to_string(i));
        std::istringstream rs(line);
        std::string tok;
        std::size_t cnt = 0;
        while (rs >> tok) {
            if (++cnt > d) fail(source, lineno, "more than " + std::to_string(d) + " coordinates");
            try {
                coords.push_back(Scalar::parse(tok, kind));
            } catch (const ContractError& e) {
                fail(source, lineno, "unparsable scalar '" + tok + "': " + e.what());
            }
        }
        if (cnt < d) fail(source, lineno, "expected " + std::to_string(d) + " coordinates, got " + std::to_string(cnt));
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (!trim(line).empty()) fail(source, lineno, "unexpected content after " + std::to_string(n) + " rows");
    }
    try {
        return PointSet(d, std::move(coords), kind, r == "1");
    } catch (const ContractError& e) {
        throw ContractError(source + ": " + e.what());
    }
}

PointSet read_pointset(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ContractError("cannot read " + path);
    return parse_pointset(f, path);
}

Rational parse_exact_decimal(std::string_view s)
{
    if (s.find('/') != std::string_view::npos) {
        auto p = s.find('/');
        Rational a = parse_exact_decimal(s.substr(0, p)), b = parse_exact_decimal(s.substr(p + 1));
        if (b == 0) throw ContractError("zero denominator in '" + std::string(s) + "'");
        return a / b;
    }
    std::string t(s);
    if (t.empty()) throw ContractError("empty number");
    std::size_t i = 0;
    bool neg = false;
    if (t[i] == '+' || t[i] == '-') neg = t[i++] == '-';
    BigInt mant = 0;
    long long exp10 = 0;
    bool digits = false, dot = false;
    for (; i < t.size(); ++i) {
        char ch = t[i];
        if (ch >= '0' && ch <= '9') {
            mant = mant * 10 + (ch - '0');
            digits = true;
            if (dot) --exp10;
        } else if (ch == '.' && !dot) {
            dot = true;
        } else {
            break;
        }
    }
    if (!digits) throw ContractError("not a number: '" + t + "'");
    if (i < t.size() && (t[i] == 'e' || t[i] == 'E')) {
        std::size_t used = 0;
        long long e = 0;
        try {
            e = std::stoll(t.substr(i + 1), &used);
        } catch (const std::exception&) {
            throw ContractError("bad exponent in '" + t + "'");
        }
        if (used != t.size() - i - 1 || std::llabs(e) > 4000) throw ContractError("bad exponent in '" + t + "'");
        exp10 += e;
        i = t.size();
    }
    if (i != t.size()) throw ContractError("not a number: '" + t + "'");
    Rational r(mant);
    BigInt p10 = 1;
    for (long long k = 0; k < std::llabs(exp10); ++k) p10 *= 10;
    r = exp10 >= 0 ? r * Rational(p10) : r / Rational(p10);
    return neg ? Rational(-r) : r;
}

double parse_angle(std::string_view s)
{
    std::string t;
    for (char ch : s)
        if (ch != ' ') t += ch;
    auto pi = t.find("pi");
    if (pi == std::string::npos) return parse_double(t);
    double coef = 1;
    std::string head = t.substr(0, pi);
    if (!head.empty() && head.back() == '*') head.pop_back();
    if (head == "-") coef = -1;
    else if (!head.empty()) coef = parse_double(head);
    std::string tail = t.substr(pi + 2);
    double den = 1, shift = 0;
    if (!tail.empty() && tail[0] == '/') {
        std::size_t k = 1;
        while (k < tail.size() && (std::isdigit(static_cast<unsigned char>(tail[k])) || tail[k] == '.')) ++k;
        den = parse_double(tail.substr(1, k - 1));
        tail = tail.substr(k);
    }
    if (!tail.empty()) {
        if (tail[0] != '+' && tail[0] != '-') throw ContractError("cannot parse angle '" + std::string(s) + "'");
        shift = parse_double(tail.substr(1));
        if (tail[0] == '-') shift = -shift;
    }
    if (den == 0) throw ContractError("zero denominator in angle");
    return coef * M_PI / den + shift;
}

}  // namespace acute
