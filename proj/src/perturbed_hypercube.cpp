#include "acute/constructions.hpp"
#include "acute/parallel.hpp"
#include "acute/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace acute {

namespace {

// relative cost decrease over 25 steps below which a stage has stalled
constexpr double kStall = 1e-2;

// Damped Gauss-Newton on r_t = max(0, tau - cos_t) over all apex triples,
// plus a weak radius term that pins the overall scale.
class AngleFit {
public:
    AngleFit(std::size_t n, std::size_t d, double tau) : n_(n), d_(d), tau_(tau) {}

    double cost(const Eigen::VectorXd& x, double* min_cos = nullptr) const
    {
        double c = 0, mc = 1;
        for_each_triple(x, [&](std::size_t, std::size_t, std::size_t, double cosv, const double*, const double*,
                               double, double) {
            mc = std::min(mc, cosv);
            double r = tau_ - cosv;
            if (r > 0) c += r * r;
        });
        double rad = radius_residual(x);
        if (min_cos) *min_cos = mc;
        return c + rad * rad;
    }

    // Returns false when the step could not be computed.
    bool step(Eigen::VectorXd& x, double& mu) const
    {
        const std::size_t P = n_ * d_;
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(P, P);
        Eigen::VectorXd g = Eigen::VectorXd::Zero(P);
        std::vector<double> row(3 * d_);
        for_each_triple(x, [&](std::size_t a, std::size_t b, std::size_t c, double cosv, const double* u,
                               const double* v, double nu, double nv) {
            double r = tau_ - cosv;
            if (r <= 0) return;
            double inv = 1.0 / (nu * nv);
            for (std::size_t t = 0; t < d_; ++t) {
                double du = v[t] * inv - cosv * u[t] / (nu * nu);
                double dv = u[t] * inv - cosv * v[t] / (nv * nv);
                // residual derivative is minus the cosine derivative
                row[t] = du + dv;       // apex
                row[d_ + t] = -du;      // leg b
                row[2 * d_ + t] = -dv;  // leg c
            }
            const std::size_t base[3] = {a * d_, b * d_, c * d_};
            for (int i = 0; i < 3; ++i)
                for (std::size_t s = 0; s < d_; ++s) {
                    double ri = row[i * d_ + s];
                    g[base[i] + s] += ri * r;
                    for (int j = 0; j < 3; ++j)
                        for (std::size_t t = 0; t < d_; ++t) H(base[i] + s, base[j] + t) += ri * row[j * d_ + t];
                }
        });
        double rad = radius_residual(x);
        Eigen::VectorXd gr = 2.0 * kRadiusWeight * x;
        H += gr * gr.transpose();
        g += gr * rad;
        double start = cost(x);
        for (int tries = 0; tries < 30; ++tries) {
            Eigen::MatrixXd A = H;
            A.diagonal().array() += mu * (1.0 + H.diagonal().array());
            Eigen::VectorXd delta = A.ldlt().solve(-g);
            if (!delta.allFinite()) return false;
            Eigen::VectorXd y = x + delta;
            if (cost(y) < start) {
                x = y;
                mu = std::max(mu / 3.0, 1e-12);
                return true;
            }
            mu *= 4.0;
        }
        return false;
    }

private:
    static constexpr double kRadiusWeight = 0.01;

    double radius_residual(const Eigen::VectorXd& x) const
    {
        return kRadiusWeight * (x.squaredNorm() - static_cast<double>(n_));
    }

    template <class F>
    void for_each_triple(const Eigen::VectorXd& x, F&& f) const
    {
        std::vector<double> u(d_), v(d_);
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b) {
                if (b == a) continue;
                double nu2 = 0;
                for (std::size_t t = 0; t < d_; ++t) {
                    u[t] = x[b * d_ + t] - x[a * d_ + t];
                    nu2 += u[t] * u[t];
                }
                for (std::size_t c = b + 1; c < n_; ++c) {
                    if (c == a) continue;
                    double nv2 = 0, dot = 0;
                    for (std::size_t t = 0; t < d_; ++t) {
                        v[t] = x[c * d_ + t] - x[a * d_ + t];
                        nv2 += v[t] * v[t];
                        dot += u[t] * v[t];
                    }
                    double nu = std::sqrt(nu2), nv = std::sqrt(nv2);
                    f(a, b, c, dot / (nu * nv), u.data(), v.data(), nu, nv);
                }
            }
    }

    std::size_t n_, d_;
    double tau_;
};


struct Attempt {
    PointSet X;
    bool acute = false;
    double min_cos = -2;  // verified, or -2 when rounding merged two points
    double float_min_cos = -2;
    std::uint64_t bad = 0;
};

Attempt run_attempt(std::size_t d, std::uint64_t seed, std::size_t attempt, double hb)
{
    const std::size_t k = d - 1, cube = std::size_t(1) << k, N = cube + 1;
    SplitMix64 rng(attempt == 0 ? seed : mix_seed(seed, attempt));
    // cube on {-1, 1}^k, dyadic heights in [-2hb, 2hb] (the cube is scaled by 2),
    // apex above the centre, and a small jitter on every coordinate
    Eigen::VectorXd x(N * d);
    for (std::size_t v = 0; v < cube; ++v) {
        for (std::size_t j = 0; j < k; ++j) x[v * d + j] = (v >> j & 1) ? 1.0 : -1.0;
        auto h = static_cast<double>(rng.below((std::uint64_t(1) << 17) + 1)) / double(1 << 16) - 1.0;
        x[v * d + k] = 2.0 * hb * h;
    }
    for (std::size_t j = 0; j < k; ++j) x[cube * d + j] = 0.0;
    x[cube * d + k] = 2.0;
    for (std::size_t t = 0; t < x.size(); ++t) x[t] += 0.1 * rng.normal();

    // acute perturbations of the cube have tiny margins, so the target
    // margin is lowered whenever the fit stalls below zero
    Attempt out;
    double mc = -1;
    for (double tau : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8}) {
        AngleFit fit(N, d, tau);
        double mu = 1e-3;
        double checkpoint = fit.cost(x);
        for (int it = 1; it <= 400; ++it) {
            if (!fit.step(x, mu)) break;
            double now = fit.cost(x, &mc);
            if (mc > tau / 5) break;
            if (it % 25 == 0) {
                if (now > (1 - kStall) * checkpoint) break;
                checkpoint = now;
            }
        }
        fit.cost(x, &mc);
        if (mc > 0) break;
        // a fit that has settled on exact right angles never leaves them
        if (mc > -1e-12) break;
    }
    out.float_min_cos = mc;

    std::vector<Scalar> c;
    c.reserve(N * d);
    for (std::size_t t = 0; t < x.size(); ++t) c.emplace_back(exact_from_double(x[t]));
    try {
        out.X = PointSet(d, std::move(c), ScalarKind::Rational);
    } catch (const ContractError&) {
        return out;  // rounding merged two points
    }
    auto rep = verify(out.X);
    out.min_cos = rep.min_cos;
    out.acute = rep.classification == Classification::Acute;
    if (!out.acute) {
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = 0; b < N; ++b)
                for (std::size_t e = b + 1; e < N; ++e)
                    if (a != b && a != e && scalar_product_at(out.X, a, b, e).sign() <= 0) ++out.bad;
    }
    return out;
}

}  // namespace

std::pair<PointSet, ConstructionStats> build_perturbed_hypercube(std::size_t d, std::uint64_t seed,
                                                                 const Rational& height_bound,
                                                                 std::size_t max_retries, unsigned threads)
{
    if (d < 3 || d > 13) throw ContractError("build_perturbed_hypercube needs 3 <= d <= 13");
    if (height_bound <= 0) throw ContractError("height_bound must be positive");
    if (max_retries < 1) throw ContractError("max_retries must be >= 1");
    const std::size_t N = (std::size_t(1) << (d - 1)) + 1;
    const double hb = height_bound.convert_to<double>();

    ConstructionStats st;
    st.requested_params = {{"d", std::to_string(d)},
                           {"height_bound", format_rational(height_bound)},
                           {"max_retries", std::to_string(max_retries)}};
    st.seed = seed;
    st.sampled = N;
    double best_cos = -2;
    std::uint64_t best_bad = 0;

    // Attempts run in batches, one per worker; the lowest successful index
    // wins, so the result does not depend on the worker count.
    const std::size_t batch = std::max(1u, threads);
    for (std::size_t first = 0; first < max_retries; first += batch) {
        std::size_t count = std::min(batch, max_retries - first);
        std::vector<Attempt> runs(count);
        parallel_chunks(count, threads, [&](std::size_t i) { runs[i] = run_attempt(d, seed, first + i, hb); });
        for (std::size_t i = 0; i < count; ++i) {
            auto& r = runs[i];
            st.attempts = first + i + 1;
            if (r.min_cos > best_cos) {
                best_cos = r.min_cos;
                best_bad = r.bad;
            }
            if (r.acute) {
                st.final_size = N;
                st.bad_triples_found = 0;
                st.extra = {{"min_cos", format_double(r.min_cos)},
                            {"float_min_cos", format_double(r.float_min_cos)}};
                return {std::move(r.X), st};
            }
        }
    }
    st.final_size = 0;
    st.bad_triples_found = best_bad;
    st.extra = {{"best_min_cos", format_double(best_cos)}, {"best_non_acute_triples", std::to_string(best_bad)}};
    throw ConstructionError("retries exhausted; best min_cos " + format_double(best_cos), st);
}

}  // namespace acute
