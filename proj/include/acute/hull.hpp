#pragma once

#include "acute/pointset.hpp"

namespace acute {

struct HullVolume {
    bool exact = false;
    bool degenerate = false;  // affine hull has dimension < d
    Rational value = 0;       // exact volume (exact path only)
    double estimate = 0;      // value as double, or the Monte Carlo estimate
    double ci_low = 0, ci_high = 0;
    std::uint64_t samples = 0, hits = 0;
};

struct VolumeOptions {
    std::uint64_t seed = 0;
    unsigned threads = 1;
    double rel_width = 0.02;   // target (ci_high - ci_low) / estimate
    double confidence = 0.99;
    std::uint64_t max_samples = std::uint64_t(1) << 23;
};

// Exact for d <= 3, Monte Carlo for 4 <= d <= 6.
HullVolume hull_volume(const PointSet& X, const VolumeOptions& opt = {});
// Rejection sampling in the bounding box with a Clopper-Pearson interval; any d <= 6.
HullVolume hull_volume_monte_carlo(const PointSet& X, const VolumeOptions& opt = {});

// Dimension of the affine hull, computed exactly.
std::size_t affine_rank(const PointSet& X);

// Gram determinant of the edge vectors idx[t] - idx[0], which equals
// (k! * k-volume)^2 of the simplex, in the frame's integer units.
BigInt simplex_gram_det(const IntFrame& f, const std::vector<std::size_t>& idx);

}  // namespace acute
