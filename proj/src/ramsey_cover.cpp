#include "acute/ramsey_cover.hpp"
#include "acute/rng.hpp"
#include "acute/verifier.hpp"

#include <algorithm>
#include <cmath>

namespace acute {

namespace {

std::vector<double> random_direction(SplitMix64& rng, std::size_t d)
{
    std::vector<double> v(d);
    double nn = 0;
    while (nn == 0) {
        nn = 0;
        for (auto& c : v) {
            c = rng.normal();
            nn += c * c;
        }
    }
    nn = std::sqrt(nn);
    for (auto& c : v) c /= nn;
    return v;
}

double angle_between_units(const std::vector<double>& a, const std::vector<double>& b)
{
    double dot = 0;
    for (std::size_t t = 0; t < a.size(); ++t) dot += a[t] * b[t];
    return std::acos(std::clamp(dot, -1.0, 1.0));
}

}  // namespace

CapCover greedy_cap_cover(std::size_t d, double alpha, std::uint64_t seed, const CoverOptions& opt)
{
    if (d < 2) throw ContractError("greedy_cap_cover needs d >= 2");
    if (!(alpha > M_PI / 2 && alpha < M_PI)) throw ContractError("alpha must lie in (pi/2, pi)");
    CapCover cv;
    cv.dim = d;
    cv.alpha = alpha;
    cv.half_angle = (M_PI - alpha) / 2;
    const double target = cv.half_angle - cv.margin;
    if (target < 0.02) throw ContractError("alpha too close to pi: caps would be too small to cover");
    const std::size_t limit = opt.max_vectors.value_or(~std::size_t(0));
    if (limit == 0) throw ContractError("max_vectors must be positive");

    SplitMix64 pool_rng(mix_seed(seed, 1));
    std::vector<std::vector<double>> pool(opt.pool);
    for (auto& p : pool) p = random_direction(pool_rng, d);
    std::vector<double> gap(pool.size(), M_PI);

    auto add = [&](const std::vector<double>& v) {
        cv.vectors.push_back(v);
        for (std::size_t i = 0; i < pool.size(); ++i) gap[i] = std::min(gap[i], angle_between_units(pool[i], v));
    };

    add(pool[0]);
    for (std::uint64_t round = 0;; ++round) {
        // farthest-point greedy on the pool
        while (cv.vectors.size() < limit) {
            auto it = std::max_element(gap.begin(), gap.end());
            if (*it < target) break;
            add(pool[static_cast<std::size_t>(it - gap.begin())]);
        }
        // Monte Carlo probe for holes
        SplitMix64 probe_rng(mix_seed(seed, 1000 + round));
        double worst = 0;
        std::vector<double> worst_dir;
        for (std::uint64_t p = 0; p < opt.probes; ++p) {
            auto u = random_direction(probe_rng, d);
            double best = 1e300;
            for (const auto& v : cv.vectors) {
                double dot = 0;
                for (std::size_t t = 0; t < d; ++t) dot += u[t] * v[t];
                best = std::min(best, std::acos(std::clamp(dot, -1.0, 1.0)));
                if (best < target) break;
            }
            if (best > worst) {
                worst = best;
                worst_dir = u;
            }
        }
        cv.probes += opt.probes;
        cv.largest_gap = worst;
        if (worst < target) {
            cv.complete = true;
            break;
        }
        if (cv.vectors.size() >= limit) {
            cv.complete = false;
            break;
        }
        add(worst_dir);
    }
    return cv;
}

PairColoring::PairColoring(std::size_t n_points, std::size_t n_colors)
    : n_(n_points), m_(n_colors), color_(n_points * (n_points - (n_points > 0)) / 2, 0),
      low_to_high_(color_.size(), 1)
{
}

std::size_t PairColoring::index(std::size_t i, std::size_t j) const
{
    if (i == j || i >= n_ || j >= n_) throw ContractError("invalid pair");
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

int PairColoring::color(std::size_t i, std::size_t j) const { return color_[index(i, j)]; }

bool PairColoring::directed(std::size_t i, std::size_t j) const
{
    std::size_t k = index(i, j);
    if (color_[k] == 0) return false;
    return (i < j) == static_cast<bool>(low_to_high_[k]);
}

void PairColoring::set(std::size_t tail, std::size_t head, int color)
{
    if (color < 0 || static_cast<std::size_t>(color) > m_) throw ContractError("color out of range");
    std::size_t k = index(tail, head);
    color_[k] = color;
    low_to_high_[k] = tail < head;
}

std::size_t PairColoring::colored_pairs() const
{
    return static_cast<std::size_t>(std::count_if(color_.begin(), color_.end(), [](int c) { return c != 0; }));
}

PairColoring color_pairs(const PointSet& X, const CapCover& cover, bool partial)
{
    if (cover.dim != X.dim()) throw ContractError("cover dimension does not match the point set");
    std::size_t n = X.size(), d = X.dim(), m = cover.vectors.size();
    std::vector<double> p(X.coords().size());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = X.coords()[k].to_double();
    const double cth = std::cos(cover.half_angle - cover.margin);
    PairColoring col(n, m);
    std::vector<double> dir(d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double len = 0;
            for (std::size_t t = 0; t < d; ++t) {
                dir[t] = p[j * d + t] - p[i * d + t];
                len += dir[t] * dir[t];
            }
            len = std::sqrt(len);
            bool done = false;
            for (std::size_t c = 0; c < m && !done; ++c) {
                double dot = 0;
                for (std::size_t t = 0; t < d; ++t) dot += cover.vectors[c][t] * dir[t];
                bool fwd = dot >= cth * len;
                bool back = -dot >= cth * len;
                if (fwd && back) throw ContractError("pair valid in both orientations for one color");
                if (fwd) col.set(i, j, static_cast<int>(c + 1));
                if (back) col.set(j, i, static_cast<int>(c + 1));
                done = fwd || back;
            }
            if (!done && !partial)
                throw ContractError("pair (" + std::to_string(i) + ", " + std::to_string(j) + ") is not covered");
        }
    return col;
}

namespace {

struct Degrees {
    std::vector<char> in, out;
};

// In/out flags of color c restricted to the active vertices.
Degrees color_degrees(const PairColoring& col, const std::vector<std::size_t>& active, int c)
{
    Degrees d{std::vector<char>(col.n_points(), 0), std::vector<char>(col.n_points(), 0)};
    for (std::size_t a = 0; a < active.size(); ++a)
        for (std::size_t b = a + 1; b < active.size(); ++b) {
            std::size_t u = active[a], v = active[b];
            if (col.color(u, v) != c) continue;
            if (col.directed(u, v)) {
                d.out[u] = 1;
                d.in[v] = 1;
            } else {
                d.out[v] = 1;
                d.in[u] = 1;
            }
        }
    return d;
}

std::optional<TwoPathWitness> path_through(const PairColoring& col, const std::vector<std::size_t>& active,
                                           const Degrees& d, int c)
{
    for (std::size_t y : active) {
        if (!(d.in[y] && d.out[y])) continue;
        TwoPathWitness w;
        w.y = y;
        w.color = c;
        bool fx = false, fz = false;
        for (std::size_t t : active) {
            if (t == y || col.color(t, y) != c) continue;
            if (!fx && col.directed(t, y)) {
                w.x = t;
                fx = true;
            }
            if (!fz && col.directed(y, t)) {
                w.z = t;
                fz = true;
            }
        }
        return w;
    }
    return std::nullopt;
}

}  // namespace

std::optional<TwoPathWitness> find_mono_2path(const PairColoring& col)
{
    std::size_t n = col.n_points();
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    std::vector<std::size_t> active = all;
    for (int c = 1; c <= static_cast<int>(col.n_colors()) && active.size() >= 3; ++c) {
        auto d = color_degrees(col, active, c);
        if (auto w = path_through(col, active, d, c)) return w;
        std::vector<std::size_t> src, snk, iso;
        for (std::size_t v : active) {
            if (d.out[v]) src.push_back(v);
            else if (d.in[v]) snk.push_back(v);
            else iso.push_back(v);
        }
        std::vector<std::size_t>& big = src.size() >= snk.size() ? src : snk;
        big.insert(big.end(), iso.begin(), iso.end());
        std::sort(big.begin(), big.end());
        active = big;
    }
    // Below 2^m + 1 points the induction can discard the part holding a path;
    // fall back to a scan of every vertex in every color.
    for (int c = 1; c <= static_cast<int>(col.n_colors()); ++c)
        if (auto w = path_through(col, all, color_degrees(col, all, c), c)) return w;
    return std::nullopt;
}

bool validate_two_path(const PairColoring& c, const TwoPathWitness& w)
{
    if (w.x == w.y || w.y == w.z || w.x == w.z) return false;
    return c.color(w.x, w.y) == w.color && c.color(w.y, w.z) == w.color && c.directed(w.x, w.y) &&
           c.directed(w.y, w.z);
}

ObtuseWitnessResult extract_obtuse_witness(const PointSet& X, double alpha, const CapCover& cover, bool partial)
{
    std::size_t m = cover.vectors.size();
    if (m < 63 && X.size() < (std::size_t(1) << m) + 1 && !partial)
        throw ContractError("extract_obtuse_witness needs |X| >= 2^m + 1");
    if (std::fabs(alpha - cover.alpha) > 1e-15) throw ContractError("alpha differs from the cover's alpha");
    ObtuseWitnessResult res;
    auto col = color_pairs(X, cover, partial);
    res.colored_pairs = col.colored_pairs();
    res.total_pairs = X.size() * (X.size() - 1) / 2;
    auto path = find_mono_2path(col);
    if (!path) return res;
    if (!validate_two_path(col, *path)) throw ContractError("internal: 2-path does not match the coloring");
    res.path = path;
    TripleWitness w{path->y, path->x, path->z, scalar_product_at(X, path->y, path->x, path->z),
                    scalar_product_at(X, path->y, path->x, path->x), scalar_product_at(X, path->y, path->z, path->z)};
    // exact confirmation: cos(angle at y) <= c_lo <= cos(alpha)
    Rational dot = w.scalar_product.to_rational(), n1 = w.norm1.to_rational(), n2 = w.norm2.to_rational();
    Rational c_lo = exact_from_double(std::cos(alpha) - 1e-15);
    BigInt L = denominator(dot) * denominator(n1) * denominator(n2);
    BigInt di = numerator(dot * Rational(L)), a1 = numerator(n1 * Rational(L)), a2 = numerator(n2 * Rational(L));
    if (compare_cos(di, a1, a2, c_lo) > 0)
        throw ContractError("confirmation failure: angle at apex is below alpha");
    res.angle = std::acos(std::clamp(dot.convert_to<double>() / std::sqrt(n1.convert_to<double>() * n2.convert_to<double>()), -1.0, 1.0));
    res.witness = w;
    return res;
}

}  // namespace acute
