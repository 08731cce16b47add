#include "acute/hull.hpp"
#include "acute/parallel.hpp"
#include "acute/rng.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <set>

namespace acute {

namespace {

// Fraction-free determinant.
BigInt bareiss_det(std::vector<BigInt> m, std::size_t k)
{
    if (k == 0) return 1;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t p = 0; p + 1 < k; ++p) {
        if (m[p * k + p] == 0) {
            std::size_t r = p + 1;
            while (r < k && m[r * k + p] == 0) ++r;
            if (r == k) return 0;
            for (std::size_t c = 0; c < k; ++c) std::swap(m[p * k + c], m[r * k + c]);
            sign = -sign;
        }
        for (std::size_t i = p + 1; i < k; ++i)
            for (std::size_t j = p + 1; j < k; ++j)
                m[i * k + j] = (m[i * k + j] * m[p * k + p] - m[i * k + p] * m[p * k + j]) / prev;
        prev = m[p * k + p];
    }
    return sign * m[k * k - 1];
}

struct Frame2 {
    const IntFrame& f;
    const BigInt& x(std::size_t i) const { return f.big[i * 2]; }
    const BigInt& y(std::size_t i) const { return f.big[i * 2 + 1]; }
    BigInt cross(std::size_t o, std::size_t a, std::size_t b) const
    {
        return (x(a) - x(o)) * (y(b) - y(o)) - (y(a) - y(o)) * (x(b) - x(o));
    }
};

// Andrew's monotone chain; counterclockwise, collinear points dropped.
std::vector<std::size_t> hull2d(const IntFrame& f)
{
    Frame2 F{f};
    std::vector<std::size_t> idx(f.n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (F.x(a) != F.x(b)) return F.x(a) < F.x(b);
        if (F.y(a) != F.y(b)) return F.y(a) < F.y(b);
        return a < b;
    });
    std::vector<std::size_t> h(2 * idx.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        while (k >= 2 && F.cross(h[k - 2], h[k - 1], idx[i]) <= 0) --k;
        h[k++] = idx[i];
    }
    for (std::size_t i = idx.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && F.cross(h[k - 2], h[k - 1], idx[i]) <= 0) --k;
        h[k++] = idx[i];
    }
    h.resize(k > 0 ? k - 1 : 0);
    return h;
}

using Face = std::array<std::size_t, 3>;

BigInt orient3(const IntFrame& f, std::size_t a, std::size_t b, std::size_t c, std::size_t p)
{
    BigInt u[3], v[3], w[3];
    for (int j = 0; j < 3; ++j) {
        u[j] = f.big[b * 3 + j] - f.big[a * 3 + j];
        v[j] = f.big[c * 3 + j] - f.big[a * 3 + j];
        w[j] = f.big[p * 3 + j] - f.big[a * 3 + j];
    }
    return u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) + u[2] * (v[0] * w[1] - v[1] * w[0]);
}

// Incremental hull; faces oriented so interior points give orient3 < 0.
std::vector<Face> hull3d(const IntFrame& f)
{
    const std::size_t n = f.n;
    auto same = [&](std::size_t a, std::size_t b) {
        for (int j = 0; j < 3; ++j)
            if (f.big[a * 3 + j] != f.big[b * 3 + j]) return false;
        return true;
    };
    std::size_t i0 = 0, i1 = 1;
    while (i1 < n && same(i0, i1)) ++i1;
    std::size_t i2 = i1 + 1;
    auto collinear = [&](std::size_t c) {
        for (int j = 0; j < 3; ++j) {
            int a = (j + 1) % 3, b = (j + 2) % 3;
            BigInt cr = (f.big[i1 * 3 + a] - f.big[i0 * 3 + a]) * (f.big[c * 3 + b] - f.big[i0 * 3 + b]) -
                        (f.big[i1 * 3 + b] - f.big[i0 * 3 + b]) * (f.big[c * 3 + a] - f.big[i0 * 3 + a]);
            if (cr != 0) return false;
        }
        return true;
    };
    if (i1 >= n) return {};
    while (i2 < n && collinear(i2)) ++i2;
    if (i2 >= n) return {};
    std::size_t i3 = i2 + 1;
    while (i3 < n && orient3(f, i0, i1, i2, i3) == 0) ++i3;
    if (i3 >= n) return {};

    std::vector<Face> faces;
    std::vector<char> alive;
    const std::size_t tet[4] = {i0, i1, i2, i3};
    for (int skip = 0; skip < 4; ++skip) {
        Face fc;
        int t = 0;
        for (int q = 0; q < 4; ++q)
            if (q != skip) fc[t++] = tet[q];
        if (orient3(f, fc[0], fc[1], fc[2], tet[skip]) > 0) std::swap(fc[1], fc[2]);
        faces.push_back(fc);
        alive.push_back(1);
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (p == i0 || p == i1 || p == i2 || p == i3) continue;
        std::set<std::pair<std::size_t, std::size_t>> edges;
        std::vector<std::size_t> visible;
        for (std::size_t k = 0; k < faces.size(); ++k) {
            if (!alive[k]) continue;
            const Face& fc = faces[k];
            if (orient3(f, fc[0], fc[1], fc[2], p) > 0) {
                visible.push_back(k);
                for (int e = 0; e < 3; ++e) edges.insert({fc[e], fc[(e + 1) % 3]});
            }
        }
        if (visible.empty()) continue;
        for (std::size_t k : visible) {
            alive[k] = 0;
            const Face fc = faces[k];  // copy: push_back below may reallocate
            for (int e = 0; e < 3; ++e) {
                std::size_t a = fc[e], b = fc[(e + 1) % 3];
                if (!edges.count({b, a})) {
                    faces.push_back({a, b, p});
                    alive.push_back(1);
                }
            }
        }
        if (faces.size() > 4 * n + 64) {
            std::vector<Face> keep;
            for (std::size_t k = 0; k < faces.size(); ++k)
                if (alive[k]) keep.push_back(faces[k]);
            faces = std::move(keep);
            alive.assign(faces.size(), 1);
        }
    }
    std::vector<Face> out;
    for (std::size_t k = 0; k < faces.size(); ++k)
        if (alive[k]) out.push_back(faces[k]);
    return out;
}

// Phase-I simplex: is q a convex combination of the n points (rows of P, d columns)?
class HullMembership {
public:
    HullMembership(std::vector<double> P, std::size_t n, std::size_t d) : P_(std::move(P)), n_(n), d_(d) {}

    bool contains(const double* q) const
    {
        const std::size_t m = d_ + 1, cols = n_ + m + 1;  // last column is the rhs
        std::vector<double> T((m + 1) * cols, 0.0);
        std::vector<std::size_t> basis(m);
        for (std::size_t r = 0; r < m; ++r) {
            double rhs = r < d_ ? q[r] : 1.0;
            double s = rhs < 0 ? -1.0 : 1.0;
            for (std::size_t i = 0; i < n_; ++i) T[r * cols + i] = s * (r < d_ ? P_[i * d_ + r] : 1.0);
            T[r * cols + n_ + r] = 1.0;
            T[r * cols + cols - 1] = s * rhs;
            basis[r] = n_ + r;
        }
        double* z = &T[m * cols];  // reduced costs of the phase-I objective
        for (std::size_t c = 0; c < cols; ++c) {
            if (c >= n_ && c < n_ + m) continue;
            double s = 0;
            for (std::size_t r = 0; r < m; ++r) s += T[r * cols + c];
            z[c] = -s;
        }
        for (int iter = 0; iter < 1000; ++iter) {
            std::size_t enter = cols;
            for (std::size_t c = 0; c + 1 < cols; ++c)
                if (z[c] < -1e-12) {
                    enter = c;
                    break;
                }
            if (enter == cols) break;
            std::size_t leave = m;
            double best = 0;
            for (std::size_t r = 0; r < m; ++r) {
                double a = T[r * cols + enter];
                if (a <= 1e-12) continue;
                double ratio = T[r * cols + cols - 1] / a;
                if (leave == m || ratio < best - 1e-15 || (ratio <= best + 1e-15 && basis[r] < basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == m) break;
            double piv = T[leave * cols + enter];
            for (std::size_t c = 0; c < cols; ++c) T[leave * cols + c] /= piv;
            for (std::size_t r = 0; r <= m; ++r) {
                if (r == leave) continue;
                double fct = T[r * cols + enter];
                if (fct == 0) continue;
                for (std::size_t c = 0; c < cols; ++c) T[r * cols + c] -= fct * T[leave * cols + c];
            }
            basis[leave] = enter;
        }
        return -z[cols - 1] <= 1e-9;
    }

private:
    std::vector<double> P_;
    std::size_t n_, d_;
};

std::pair<double, double> clopper_pearson(std::uint64_t k, std::uint64_t n, double confidence)
{
    const double a = 1 - confidence;
    double lo = k == 0 ? 0.0 : boost::math::ibeta_inv(double(k), double(n - k + 1), a / 2);
    double hi = k == n ? 1.0 : boost::math::ibeta_inv(double(k + 1), double(n - k), 1 - a / 2);
    return {lo, hi};
}

void check_input(const PointSet& X)
{
    if (X.dim() < 1 || X.dim() > 6) throw ContractError("hull volume supports 1 <= d <= 6");
    if (X.size() < X.dim() + 1) throw ContractError("hull volume needs N >= d+1");
}

}  // namespace

BigInt simplex_gram_det(const IntFrame& f, const std::vector<std::size_t>& idx)
{
    if (idx.empty()) throw ContractError("empty simplex");
    const std::size_t k = idx.size() - 1, d = f.d;
    std::vector<BigInt> e(k * d);
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t j = 0; j < d; ++j) e[t * d + j] = f.big[idx[t + 1] * d + j] - f.big[idx[0] * d + j];
    std::vector<BigInt> g(k * k);
    for (std::size_t s = 0; s < k; ++s)
        for (std::size_t t = s; t < k; ++t) {
            BigInt v = 0;
            for (std::size_t j = 0; j < d; ++j) v += e[s * d + j] * e[t * d + j];
            g[s * k + t] = g[t * k + s] = v;
        }
    return bareiss_det(std::move(g), k);
}

std::size_t affine_rank(const PointSet& X)
{
    const std::size_t n = X.size(), d = X.dim();
    if (n == 0) return 0;
    IntFrame f = make_int_frame(X);
    std::vector<std::vector<BigInt>> basis;  // echelon rows
    std::vector<std::size_t> pivots;
    for (std::size_t i = 1; i < n && basis.size() < d; ++i) {
        std::vector<BigInt> v(d);
        for (std::size_t j = 0; j < d; ++j) v[j] = f.big[i * d + j] - f.big[j];
        for (std::size_t b = 0; b < basis.size(); ++b) {
            std::size_t p = pivots[b];
            if (v[p] == 0) continue;
            BigInt a = basis[b][p], c = v[p];
            for (std::size_t j = 0; j < d; ++j) v[j] = v[j] * a - basis[b][j] * c;
        }
        auto it = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
        if (it == v.end()) continue;
        BigInt g = 0;
        for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
        for (auto& x : v) x /= g;
        pivots.push_back(static_cast<std::size_t>(it - v.begin()));
        basis.push_back(std::move(v));
    }
    return basis.size();
}

HullVolume hull_volume_monte_carlo(const PointSet& X, const VolumeOptions& opt)
{
    check_input(X);
    if (!(opt.rel_width > 0) || !(opt.confidence > 0 && opt.confidence < 1))
        throw ContractError("invalid Monte Carlo options");
    const std::size_t n = X.size(), d = X.dim();
    HullVolume hv;
    if (affine_rank(X) < d) {
        hv.exact = true;
        hv.degenerate = true;
        return hv;
    }
    IntFrame f = make_int_frame(X);
    const double sc = f.scale.convert_to<double>();
    // unit-box coordinates keep the simplex tolerances meaningful
    std::vector<double> lo(d, 1e300), hi(d, -1e300), P(n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double v = f.big[i * d + j].convert_to<double>() / sc;
            P[i * d + j] = v;
            lo[j] = std::min(lo[j], v);
            hi[j] = std::max(hi[j], v);
        }
    double box = 1;
    for (std::size_t j = 0; j < d; ++j) box *= hi[j] - lo[j];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) P[i * d + j] = (P[i * d + j] - lo[j]) / (hi[j] - lo[j]);

    std::function<bool(const double*)> inside;
    std::vector<std::array<double, 4>> planes;  // a.x <= b, stored as (a0, a1, a2, b)
    if (d == 1) {
        inside = [](const double*) { return true; };
    } else if (d == 2) {
        auto h = hull2d(f);
        for (std::size_t k = 0; k < h.size(); ++k) {
            const double* a = &P[h[k] * 2];
            const double* b = &P[h[(k + 1) % h.size()] * 2];
            // ccw: inside when cross(b - a, q - a) >= 0
            planes.push_back({b[1] - a[1], -(b[0] - a[0]), 0.0, (b[1] - a[1]) * a[0] - (b[0] - a[0]) * a[1]});
        }
        inside = [&planes](const double* q) {
            for (const auto& p : planes)
                if (p[0] * q[0] + p[1] * q[1] > p[3]) return false;
            return true;
        };
    } else if (d == 3) {
        for (const auto& fc : hull3d(f)) {
            const double* a = &P[fc[0] * 3];
            const double* b = &P[fc[1] * 3];
            const double* c = &P[fc[2] * 3];
            double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]}, v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
            double nx = u[1] * v[2] - u[2] * v[1], ny = u[2] * v[0] - u[0] * v[2], nz = u[0] * v[1] - u[1] * v[0];
            planes.push_back({nx, ny, nz, nx * a[0] + ny * a[1] + nz * a[2]});
        }
        inside = [&planes](const double* q) {
            for (const auto& p : planes)
                if (p[0] * q[0] + p[1] * q[1] + p[2] * q[2] > p[3]) return false;
            return true;
        };
    } else {
        auto mem = std::make_shared<HullMembership>(P, n, d);
        inside = [mem](const double* q) { return mem->contains(q); };
    }

    constexpr std::uint64_t kBlock = 8192;
    constexpr std::size_t kBatch = 16;
    std::uint64_t block = 0;
    for (;;) {
        std::vector<std::uint64_t> hits(kBatch, 0);
        parallel_chunks(kBatch, opt.threads, [&](std::size_t c) {
            SplitMix64 rng(mix_seed(opt.seed, block + c));
            std::vector<double> q(d);
            std::uint64_t h = 0;
            for (std::uint64_t s = 0; s < kBlock; ++s) {
                for (std::size_t j = 0; j < d; ++j) q[j] = rng.uniform();
                if (inside(q.data())) ++h;
            }
            hits[c] = h;
        });
        block += kBatch;
        for (auto h : hits) hv.hits += h;
        hv.samples += kBatch * kBlock;
        auto [pl, ph] = clopper_pearson(hv.hits, hv.samples, opt.confidence);
        double p = double(hv.hits) / double(hv.samples);
        hv.estimate = p * box;
        hv.ci_low = pl * box;
        hv.ci_high = ph * box;
        if ((p > 0 && (ph - pl) / p <= opt.rel_width) || hv.samples >= opt.max_samples) break;
    }
    hv.exact = false;
    return hv;
}

HullVolume hull_volume(const PointSet& X, const VolumeOptions& opt)
{
    check_input(X);
    const std::size_t d = X.dim();
    if (d >= 4) return hull_volume_monte_carlo(X, opt);
    HullVolume hv;
    hv.exact = true;
    if (affine_rank(X) < d) {
        hv.degenerate = true;
        return hv;
    }
    IntFrame f = make_int_frame(X);
    BigInt num = 0;
    BigInt den = 1;
    if (d == 1) {
        BigInt lo = f.big[0], hi = f.big[0];
        for (const auto& v : f.big) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        num = hi - lo;
    } else if (d == 2) {
        auto h = hull2d(f);
        for (std::size_t k = 0; k < h.size(); ++k) {
            std::size_t a = h[k], b = h[(k + 1) % h.size()];
            num += f.big[a * 2] * f.big[b * 2 + 1] - f.big[b * 2] * f.big[a * 2 + 1];
        }
        num = abs(num);
        den = 2;
    } else {
        auto faces = hull3d(f);
        std::size_t o = faces.front()[0];
        for (const auto& fc : faces) num += orient3(f, o, fc[0], fc[1], fc[2]);
        // orient3(o, a, b, c) = det(a - o, b - o, c - o)
        num = abs(num);
        den = 6;
    }
    BigInt sd = 1;
    for (std::size_t j = 0; j < d; ++j) sd *= f.scale;
    hv.value = Rational(num, den * sd);
    hv.estimate = hv.value.convert_to<double>();
    hv.ci_low = hv.ci_high = hv.estimate;
    return hv;
}

}  // namespace acute
