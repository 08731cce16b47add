#include "acute/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace acute {

BoundValue BoundValue::of(const BigInt& v)
{
    BoundValue b;
    b.kind = Kind::Integer;
    b.integer = v;
    return b;
}

BoundValue BoundValue::of(double v)
{
    BoundValue b;
    b.kind = Kind::Real;
    b.real = v;
    return b;
}

BoundValue BoundValue::infinite()
{
    BoundValue b;
    b.kind = Kind::Infinite;
    return b;
}

BoundValue BoundValue::formula(std::string text)
{
    BoundValue b;
    b.kind = Kind::Symbolic;
    b.symbolic = std::move(text);
    return b;
}

std::string BoundValue::str() const
{
    switch (kind) {
    case Kind::Integer: return integer.str();
    case Kind::Real: return format_double(real);
    case Kind::Infinite: return "+inf";
    case Kind::Symbolic: return symbolic;
    }
    return {};
}

std::string_view bound_status_name(BoundStatus s)
{
    switch (s) {
    case BoundStatus::Exact: return "exact";
    case BoundStatus::Asymptotic: return "asymptotic";
    case BoundStatus::ForLargeD: return "for-large-d";
    }
    return "?";
}

namespace {

BigInt fib_unchecked(std::size_t k)
{
    BigInt a = 1, b = 1;
    for (std::size_t i = 1; i < k; ++i) {
        BigInt c = a + b;
        a = b;
        b = c;
    }
    return b;
}

constexpr double kPi = 3.14159265358979323846;
constexpr double kAngleTol = 1e-12;

}  // namespace

BigInt fibonacci(std::size_t k)
{
    if (k > 185) throw ContractError("fibonacci index must be at most 185");
    return fib_unchecked(k);
}

BoundsRow bounds_f(std::size_t d)
{
    if (d < 2) throw ContractError("bounds_f needs d >= 2");
    BoundsRow row;
    row.quantity = "f(" + std::to_string(d) + ")";
    BigInt lin = 2 * BigInt(d) - 1;
    BigInt gh = (BigInt(1) << (d - 1)) + 1;
    BigInt lower = std::max(lin, gh);
    // F_{d+1} never beats 2^{d-1}+1, but it is still part of the maximum below the index cap
    if (d + 1 <= 185) lower = std::max(lower, fibonacci(d + 1));
    BigInt upper = (BigInt(1) << d) - 1;
    row.source = "lower max(2d-1, F_{d+1}, 2^{d-1}+1); upper 2^d-1";
    if (d == 2) {
        upper = 3;
        row.source += "; f(2)=3";
    } else if (d == 3) {
        upper = 5;
        row.source += "; f(3)=5";
    }
    row.lower = BoundValue::of(lower);
    row.upper = BoundValue::of(upper);
    row.status = BoundStatus::Exact;
    return row;
}

BoundsRow bounds_F_alpha(double alpha)
{
    if (!(alpha > 0 && alpha < kPi)) throw ContractError("alpha must lie in (0, pi)");
    BoundsRow row;
    row.quantity = "F(" + format_double(alpha) + ")";
    if (alpha <= kPi / 3 + kAngleTol) {
        row.lower = row.upper = BoundValue::of(BigInt(1));
        row.source = "f(d, alpha) = 2 for alpha <= pi/3";
        row.status = BoundStatus::Exact;
        return row;
    }
    if (std::fabs(alpha - kPi / 2) <= kAngleTol) {
        row.lower = row.upper = BoundValue::of(BigInt(2));
        row.source = "F(pi/2) = 2";
        row.status = BoundStatus::Exact;
        return row;
    }
    if (alpha > kPi / 2) {
        row.lower = BoundValue::infinite();
        row.upper = BoundValue::infinite();
        row.source = "2^{c^d} < f(d, alpha) < 2^{C^d}; lim_{alpha -> pi/2+} f(d, alpha) = 2^d";
        row.status = BoundStatus::Asymptotic;
        row.notes.push_back("f(d, alpha) is doubly exponential in d");
        return row;
    }
    const double delta = alpha - kPi / 3, a = kPi / 2 - alpha;
    const double dcap = kPi / 12;
    // F is nondecreasing in alpha, so the near-pi/3 lower bound at the edge of its
    // range stays valid further out
    double lower = 1 + std::min(delta, dcap) * std::min(delta, dcap);
    double upper = 2;
    std::string src = "lower 1+delta^2";
    if (delta <= dcap) {
        upper = std::min(upper, 1 + 4 * delta);
        src += "; upper 1+4delta";
        row.notes.push_back("near-pi/3 interval used with delta <= pi/12; its range of validity is not stated");
    } else {
        row.notes.push_back("1+delta^2 evaluated at delta = pi/12 (monotonicity in alpha)");
    }
    if (a < 0.4) {
        if (2 - a * a < upper) src += "; upper 2-a^2 with a = pi/2-alpha";
        upper = std::min(upper, 2 - a * a);
    }
    row.notes.push_back("liminf F(alpha) >= sqrt(2) as alpha -> pi/2- (limit only)");
    row.lower = BoundValue::of(lower);
    row.upper = BoundValue::of(upper);
    row.source = src;
    row.status = BoundStatus::Asymptotic;
    return row;
}

std::vector<BoundsRow> bounds_table(std::size_t d_min, std::size_t d_max,
                                    const std::map<std::size_t, std::size_t>& achieved)
{
    if (d_min < 2 || d_min > d_max || d_max > 400) throw ContractError("bounds table needs 2 <= from <= to <= 400");
    std::vector<BoundsRow> rows;
    for (std::size_t d = d_min; d <= d_max; ++d) {
        rows.push_back(bounds_f(d));
        if (auto it = achieved.find(d); it != achieved.end())
            rows.back().notes.push_back("achieved " + std::to_string(it->second));
    }
    return rows;
}

}  // namespace acute
