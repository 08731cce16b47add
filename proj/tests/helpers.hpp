#pragma once

#include "acute/pointset.hpp"
#include "acute/rng.hpp"
#include "oracles.hpp"

#include <atomic>
#include <vector>

namespace th {

// Total randomized cases run by property tests; reported by the fuzz summary test.
inline std::atomic<std::uint64_t>& fuzz_cases()
{
    static std::atomic<std::uint64_t> n{0};
    return n;
}

inline oracle::Pts to_pts(const acute::PointSet& X)
{
    auto q = acute::exact_coords(X);
    oracle::Pts P(X.size(), std::vector<acute::Rational>(X.dim()));
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = 0; j < X.dim(); ++j) P[i][j] = q[i * X.dim() + j];
    return P;
}

// Distinct integer points with coordinates in [-r, r].
inline acute::PointSet random_int_set(acute::SplitMix64& g, std::size_t n, std::size_t d, long long r)
{
    for (;;) {
        std::vector<std::vector<long long>> rows(n, std::vector<long long>(d));
        for (auto& row : rows)
            for (auto& v : row) v = static_cast<long long>(g.below(2 * r + 1)) - r;
        auto sorted = rows;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) return acute::PointSet::from_integers(rows);
    }
}

inline acute::PointSet random_rat_set(acute::SplitMix64& g, std::size_t n, std::size_t d, long long r, long long q)
{
    for (;;) {
        std::vector<std::vector<acute::Rational>> rows(n, std::vector<acute::Rational>(d));
        for (auto& row : rows)
            for (auto& v : row)
                v = acute::Rational(static_cast<long long>(g.below(2 * r + 1)) - r, static_cast<long long>(g.below(q)) + 1);
        try {
            return acute::PointSet::from_rationals(rows);
        } catch (const acute::ContractError&) {
        }
    }
}

inline acute::PointSet random_f64_set(acute::SplitMix64& g, std::size_t n, std::size_t d)
{
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    for (auto& row : rows)
        for (auto& v : row) v = g.normal();
    return acute::PointSet::from_doubles(rows);
}

}  // namespace th
