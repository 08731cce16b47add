#pragma once

#include "acute/scalar.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace acute {

// Immutable set of N points in R^d sharing one scalar kind.
class PointSet {
public:
    PointSet() = default;
    // coords is row-major, N*dim entries. Throws on kind mismatch, or on duplicates unless raw.
    PointSet(std::size_t dim, std::vector<Scalar> coords, ScalarKind kind, bool raw = false);

    static PointSet from_integers(const std::vector<std::vector<long long>>& rows, bool raw = false);
    static PointSet from_rationals(const std::vector<std::vector<Rational>>& rows, bool raw = false);
    static PointSet from_doubles(const std::vector<std::vector<double>>& rows, bool raw = false);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    ScalarKind kind() const { return kind_; }
    bool raw() const { return raw_; }
    const Scalar& at(std::size_t i, std::size_t j) const { return coords_[i * dim_ + j]; }
    const std::vector<Scalar>& coords() const { return coords_; }

    bool has_duplicates() const;
    PointSet subset(const std::vector<std::size_t>& idx) const;
    PointSet with_raw(bool raw) const;
    bool operator==(const PointSet& o) const;

private:
    std::size_t dim_ = 0;
    std::vector<Scalar> coords_;
    ScalarKind kind_ = ScalarKind::Integer;
    bool raw_ = false;
};

struct TripleWitness {
    std::size_t apex = 0;
    std::size_t leg1 = 0;
    std::size_t leg2 = 0;
    Scalar scalar_product;
    Scalar norm1;  // |leg1 - apex|^2
    Scalar norm2;  // |leg2 - apex|^2
};

// Exact sets rescaled by the lcm of denominators and translated so every
// coordinate is a nonnegative integer. Angles and signs are unchanged;
// scalar products scale by scale^2.
struct IntFrame {
    std::size_t n = 0, d = 0;
    BigInt scale = 1;
    std::vector<BigInt> big;
    // Filled when d * span^2 < 2^53: every difference dot product is then exact in doubles.
    bool exact_double = false;
    std::vector<double> dbl;

    BigInt dot(std::size_t apex, std::size_t a, std::size_t b) const;
};

IntFrame make_int_frame(const PointSet& X);
// Exact rational image of any set (floats converted bit-exactly).
std::vector<Rational> exact_coords(const PointSet& X);

Scalar scalar_product_at(const PointSet& X, std::size_t apex, std::size_t leg1, std::size_t leg2);

struct MinScalarOptions {
    bool include_degenerate_legs = false;
    unsigned threads = 1;
};
// Minimum of <x_l1 - x_a, x_l2 - x_a> over apex a not in {l1, l2} and l1 < l2
// (l1 <= l2 with the degenerate flag). Ties go to the lexicographically smallest triple.
std::pair<Scalar, TripleWitness> min_scalar_product(const PointSet& X, const MinScalarOptions& opt = {});

struct DiameterResult {
    Scalar value;
    std::size_t i = 0, j = 0;
};
DiameterResult squared_diameter(const PointSet& X);

PointSet hypercube(std::size_t d);

}  // namespace acute
