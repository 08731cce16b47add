#pragma once

#include "acute/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace acute {

// Extended value: exact integer, real, +infinity, or a formula that only makes
// sense symbolically.
struct BoundValue {
    enum class Kind { Integer, Real, Infinite, Symbolic };
    Kind kind = Kind::Integer;
    BigInt integer = 0;
    double real = 0;
    std::string symbolic;

    static BoundValue of(const BigInt& v);
    static BoundValue of(double v);
    static BoundValue infinite();
    static BoundValue formula(std::string text);
    std::string str() const;
};

enum class BoundStatus { Exact, Asymptotic, ForLargeD };
std::string_view bound_status_name(BoundStatus s);

struct BoundsRow {
    std::string quantity;
    BoundValue lower, upper;
    std::string source;
    BoundStatus status = BoundStatus::Exact;
    std::vector<std::string> notes;
};

// F_k with F_0 = F_1 = 1; 0 <= k <= 185.
BigInt fibonacci(std::size_t k);

BoundsRow bounds_f(std::size_t d);
BoundsRow bounds_F_alpha(double alpha);
// achieved: sizes of verified constructions keyed by dimension, attached as notes
std::vector<BoundsRow> bounds_table(std::size_t d_min, std::size_t d_max,
                                    const std::map<std::size_t, std::size_t>& achieved = {});

}  // namespace acute
