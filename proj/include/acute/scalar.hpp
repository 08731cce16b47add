#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace acute {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ScalarKind { Integer, Rational, Float64 };

// Thrown for every precondition/contract violation in the library.
class ContractError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string_view kind_name(ScalarKind k);
ScalarKind parse_kind(std::string_view s);

// Tagged number. Integer and Rational values are exact; Float64 is an IEEE double.
// Arithmetic between different kinds throws; use the explicit conversions.
class Scalar {
public:
    Scalar() : v_(BigInt(0)) {}
    Scalar(BigInt v) : v_(std::move(v)) {}
    Scalar(Rational v) : v_(std::move(v)) {}
    Scalar(double v) : v_(v) {}
    static Scalar integer(long long v) { return Scalar(BigInt(v)); }
    static Scalar rational(long long p, long long q);

    ScalarKind kind() const;
    const BigInt& as_integer() const;
    const Rational& as_rational() const;
    double as_float() const;

    // Exact value as a rational. Doubles convert exactly (they are dyadic).
    Rational to_rational() const;
    double to_double() const;
    Scalar to_kind(ScalarKind k) const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;

    int sign() const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const;

    // "p", "p/q" (lowest terms) or shortest round-trip decimal.
    std::string str() const;
    static Scalar parse(std::string_view text, ScalarKind k);

private:
    std::variant<BigInt, Rational, double> v_;
};

Rational exact_from_double(double x);
std::string format_double(double x);
std::string format_rational(const Rational& r);
Rational parse_rational(std::string_view s);
double parse_double(std::string_view s);

}  // namespace acute
