#include "acute/volume_cert.hpp"
#include "acute/rng.hpp"

#include <algorithm>
#include <cmath>

namespace acute {

namespace {

BigInt ipow(const BigInt& b, std::size_t e)
{
    BigInt r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
}

Rational rpow(const Rational& b, std::size_t e)
{
    Rational r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
}

// volume comparison: exact when both are exact, point estimates otherwise
bool vol_le(const HullVolume& a, const Rational& fa, const HullVolume& b, const Rational& fb)
{
    if (a.exact && b.exact) return a.value * fa <= b.value * fb;
    return a.estimate * fa.convert_to<double>() <= b.estimate * fb.convert_to<double>();
}

std::size_t snap_ceil(long double x)
{
    long double r = std::nearbyint(x);
    if (std::fabs(x - r) < 1e-9L) return static_cast<std::size_t>(r);
    return static_cast<std::size_t>(std::ceil(x));
}

}  // namespace

std::vector<std::size_t> caratheodory_base(const PointSet& X)
{
    const std::size_t n = X.size(), d = X.dim();
    if (n < d + 1 || affine_rank(X) < d) throw ContractError("caratheodory_base needs a full-dimensional set");
    IntFrame f = make_int_frame(X);
    auto dia = squared_diameter(X);
    std::vector<std::size_t> base{std::min(dia.i, dia.j), std::max(dia.i, dia.j)};
    std::vector<char> used(n, 0);
    used[base[0]] = used[base[1]] = 1;
    while (base.size() < d + 1) {
        std::size_t pick = n;
        BigInt best = 0;
        for (std::size_t p = 0; p < n; ++p) {
            if (used[p]) continue;
            auto cand = base;
            cand.push_back(p);
            BigInt g = simplex_gram_det(f, cand);
            if (g > best) {
                best = g;
                pick = p;
            }
        }
        if (pick == n) throw ContractError("caratheodory_base: degenerate input");
        base.push_back(pick);
        used[pick] = 1;
    }
    if (d <= 3) {
        auto vb = hull_volume(X.subset(base)).value;
        auto vx = hull_volume(X).value;
        if (vb * Rational(ipow(BigInt(n), d + 1)) < vx)
            throw ContractError("internal: Caratheodory base volume below N^{-d-1} Vol(X)");
    }
    return base;
}

double lemma1_min_c(std::size_t n, std::size_t d)
{
    return static_cast<double>(12.0L * d * std::log2(static_cast<long double>(n)) / n);
}

ChainResult lemma1_chain(const PointSet& X, const Rational& c, std::uint64_t seed, const VolumeOptions& vopt)
{
    const std::size_t n = X.size(), d = X.dim();
    if (n < d + 1) throw ContractError("lemma1_chain needs N >= d+1");
    if (n < 2) throw ContractError("lemma1_chain needs N >= 2");
    const long double lg = std::log2(static_cast<long double>(n));
    const long double cl = c.convert_to<long double>();
    if (c > 1 || cl < 12.0L * d * lg / n)
        throw ContractError("c must lie in [12 d log2 N / N, 1] = [" + format_double(lemma1_min_c(n, d)) + ", 1]");

    ChainResult res;
    res.c = c;
    res.step_lower = snap_ceil(cl * n / (3.0L * d * lg));
    res.step_upper = static_cast<double>(cl * n / (2.0L * d * lg));

    auto base = caratheodory_base(X);
    std::vector<char> in_base(n, 0);
    for (auto i : base) in_base[i] = 1;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i)
        if (!in_base[i]) rest.push_back(i);
    SplitMix64 rng(seed);
    for (std::size_t i = rest.size(); i > 1; --i) std::swap(rest[i - 1], rest[rng.below(i)]);

    // split the remaining points into k near-equal batches, each inside the window
    const std::size_t k = rest.size() / res.step_lower;
    if (k == 0) throw ContractError("lemma1_chain: fewer remaining points than one batch");
    const std::size_t small = rest.size() / k, extra = rest.size() % k;
    if (static_cast<double>(small + (extra ? 1 : 0)) > res.step_upper)
        throw ContractError("lemma1_chain: batch size leaves the window");

    std::vector<std::size_t> cur = base;
    res.chain_sizes.push_back(cur.size());
    VolumeOptions vo = vopt;
    auto volume = [&](std::vector<std::size_t> idx, std::uint64_t step) {
        std::sort(idx.begin(), idx.end());
        vo.seed = mix_seed(vopt.seed, step);
        return hull_volume(X.subset(idx), vo);
    };
    HullVolume vcur = volume(cur, 0);
    std::size_t pos = 0;
    for (std::size_t b = 0; b < k; ++b) {
        std::size_t sz = small + (b < extra ? 1 : 0);
        std::vector<std::size_t> next = cur;
        next.insert(next.end(), rest.begin() + pos, rest.begin() + pos + sz);
        pos += sz;
        HullVolume vnext = volume(next, b + 1);
        res.chain_sizes.push_back(next.size());
        if (!vnext.degenerate && vol_le(vnext, Rational(1), vcur, 1 + c)) {
            res.index_found = b;
            res.A = cur;
            res.B = next;
            std::sort(res.A.begin(), res.A.end());
            std::sort(res.B.begin(), res.B.end());
            res.vol_A = vcur;
            res.vol_B = vnext;
            res.exact = vcur.exact && vnext.exact;
            return res;
        }
        cur = std::move(next);
        vcur = vnext;
    }
    throw ContractError("internal: volume chain grew by more than (1+c) at every step");
}

Rational sin_upper(double alpha)
{
    return exact_from_double(std::sin(alpha)) + Rational(BigInt(1), BigInt(1) << 40);
}

Rational homothety_lambda(double alpha)
{
    if (!(alpha > 0 && alpha < 0.4)) throw ContractError("homothety_lambda needs 0 < alpha < 0.4");
    Rational eps = sin_upper(alpha);
    return 1 / (2 * (1 - Rational(3, 2) * eps * eps));
}

bool check_homothet_disjoint(const PointSet& X, const std::vector<std::size_t>& A, std::size_t x, std::size_t z,
                             const Rational& lambda)
{
    if (x == z) throw ContractError("check_homothet_disjoint needs x != z");
    if (A.empty()) throw ContractError("check_homothet_disjoint needs a nonempty A");
    // translation- and scale-free, so the integer frame decides it exactly
    IntFrame f = make_int_frame(X);
    const std::size_t d = f.d;
    std::vector<BigInt> w(d);
    BigInt ww = 0;
    for (std::size_t j = 0; j < d; ++j) {
        w[j] = f.big[z * d + j] - f.big[x * d + j];
        ww += w[j] * w[j];
    }
    BigInt lo, hi;
    bool first = true;
    for (std::size_t a : A) {
        BigInt s = 0;
        for (std::size_t j = 0; j < d; ++j) s += (f.big[a * d + j] - f.big[x * d + j]) * w[j];
        if (first || s < lo) lo = s;
        if (first || s > hi) hi = s;
        first = false;
    }
    Rational half = Rational(ww) / 2;
    bool near_side = lambda * Rational(hi) < half;
    bool far_side = (1 - lambda) * Rational(ww) + lambda * Rational(lo) > half;
    return near_side && far_side;
}

Theorem2Certificate theorem2_certificate(const PointSet& X, double alpha, std::uint64_t seed, unsigned threads)
{
    const std::size_t n = X.size(), d = X.dim();
    Theorem2Certificate cert;
    cert.alpha = alpha;
    cert.lambda = homothety_lambda(alpha);
    cert.epsilon = sin_upper(alpha);
    cert.n_points = n;

    VerifyOptions vo;
    vo.threads = threads;
    auto thr = verify_threshold(X, ThresholdQuery{cert.epsilon, false}, vo);
    if (!thr.pass) {
        CertificateError e("angle precondition fails: some angle exceeds pi/2 - alpha");
        e.witness = thr.witness;
        throw e;
    }
    if (lemma1_min_c(n, d) > 1) {
        std::size_t need = n;
        while (12.0L * d * std::log2(static_cast<long double>(need)) > need) ++need;
        CertificateError e("N too small for c = 1: need N >= " + std::to_string(need));
        e.required_n = need;
        throw e;
    }
    VolumeOptions vopt;
    vopt.seed = seed;
    vopt.threads = threads;
    cert.chain = lemma1_chain(X, Rational(1), seed, vopt);

    std::vector<std::size_t> D;
    std::set_difference(cert.chain.B.begin(), cert.chain.B.end(), cert.chain.A.begin(), cert.chain.A.end(),
                        std::back_inserter(D));
    bool all = true;
    for (std::size_t i = 0; i < D.size(); ++i)
        for (std::size_t j = i + 1; j < D.size(); ++j) {
            ++cert.pairs_checked;
            if (!check_homothet_disjoint(X, cert.chain.A, D[i], D[j], cert.lambda)) all = false;
        }
    cert.disjointness_checked = all;
    Rational ld = rpow(cert.lambda, d);
    cert.volume_lower_ok = vol_le(cert.chain.vol_A, Rational(D.size()) * ld, cert.chain.vol_B, Rational(1));
    cert.volume_upper_ok = vol_le(cert.chain.vol_B, Rational(1), cert.chain.vol_A, Rational(2));
    Rational b = Rational(8 * d * d) / ld;
    cert.bound = numerator(b) / denominator(b);
    cert.holds = BigInt(n) <= cert.bound;
    return cert;
}

}  // namespace acute
