#pragma once

#include "acute/pointset.hpp"

#include <optional>
#include <vector>

namespace acute {

struct CapCover {
    std::size_t dim = 0;
    double alpha = 0;
    double half_angle = 0;  // (pi - alpha) / 2
    double margin = 0.01;   // subtracted from half_angle when coloring
    std::vector<std::vector<double>> vectors;
    bool complete = false;        // last probe round found no hole
    double largest_gap = 0;       // max over probes of the angle to the nearest vector
    std::uint64_t probes = 0;
};

struct CoverOptions {
    std::uint64_t probes = 1000000;
    std::size_t pool = 20000;
    // Stop after this many vectors even if holes remain (the cover is then partial).
    std::optional<std::size_t> max_vectors;
};

CapCover greedy_cap_cover(std::size_t d, double alpha, std::uint64_t seed, const CoverOptions& opt = {});

// Orientation convention: an edge tail -> head is colored c when the angle
// between v_c and head - tail is at most half_angle - margin.
class PairColoring {
public:
    PairColoring() = default;
    PairColoring(std::size_t n_points, std::size_t n_colors);

    std::size_t n_points() const { return n_; }
    std::size_t n_colors() const { return m_; }
    // color in 1..m, 0 = uncolored
    int color(std::size_t i, std::size_t j) const;
    // true when the edge is oriented i -> j
    bool directed(std::size_t i, std::size_t j) const;
    void set(std::size_t tail, std::size_t head, int color);
    std::size_t colored_pairs() const;

private:
    std::size_t index(std::size_t i, std::size_t j) const;
    std::size_t n_ = 0, m_ = 0;
    std::vector<int> color_;
    std::vector<char> low_to_high_;
};

// partial = true leaves uncovered pairs uncolored instead of failing.
PairColoring color_pairs(const PointSet& X, const CapCover& cover, bool partial = false);

struct TwoPathWitness {
    std::size_t x = 0, y = 0, z = 0;
    int color = 0;
};

std::optional<TwoPathWitness> find_mono_2path(const PairColoring& c);
bool validate_two_path(const PairColoring& c, const TwoPathWitness& w);

struct ObtuseWitnessResult {
    std::optional<TripleWitness> witness;  // apex y, legs x and z
    std::optional<TwoPathWitness> path;
    double angle = 0;
    std::size_t colored_pairs = 0;
    std::size_t total_pairs = 0;
};

ObtuseWitnessResult extract_obtuse_witness(const PointSet& X, double alpha, const CapCover& cover,
                                           bool partial = false);

}  // namespace acute
