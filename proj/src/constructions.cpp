#include "acute/constructions.hpp"
#include "acute/parallel.hpp"
#include "acute/rng.hpp"

#include <bit>
#include <cmath>
#include <queue>
#include <unordered_set>

namespace acute {

std::vector<std::size_t> greedy_delete(std::size_t n, const std::vector<Triple>& bad)
{
    std::vector<std::vector<std::uint32_t>> adj(n);
    std::vector<std::uint64_t> deg(n, 0);
    for (std::size_t t = 0; t < bad.size(); ++t)
        for (auto v : bad[t]) {
            if (v >= n) throw ContractError("triple index out of range");
            adj[v].push_back(static_cast<std::uint32_t>(t));
            ++deg[v];
        }
    std::vector<char> dead_triple(bad.size(), 0), removed(n, 0);
    std::priority_queue<std::pair<std::uint64_t, std::int64_t>> pq;
    for (std::size_t v = 0; v < n; ++v)
        if (deg[v] > 0) pq.push({deg[v], -static_cast<std::int64_t>(v)});
    std::size_t live = bad.size();
    while (live > 0) {
        auto [dg, neg] = pq.top();
        pq.pop();
        auto v = static_cast<std::size_t>(-neg);
        if (removed[v] || dg != deg[v] || dg == 0) continue;
        removed[v] = 1;
        for (auto t : adj[v]) {
            if (dead_triple[t]) continue;
            dead_triple[t] = 1;
            --live;
            for (auto u : bad[t]) {
                if (u == v || removed[u]) continue;
                --deg[u];
                if (deg[u] > 0) pq.push({deg[u], -static_cast<std::int64_t>(u)});
            }
        }
        deg[v] = 0;
    }
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < n; ++v)
        if (!removed[v]) keep.push_back(v);
    return keep;
}

BigInt erdos_furedi_target(std::size_t d)
{
    // 1/2 (2/sqrt3)^d = sqrt(4^(d-1) / 3^d); floor(sqrt(r)) = isqrt(floor(r))
    if (d == 0) return 0;
    BigInt num = BigInt(1) << (2 * (d - 1));
    BigInt den = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(d));
    return boost::multiprecision::sqrt(BigInt(num / den));
}

std::pair<PointSet, ConstructionStats> build_erdos_furedi(std::size_t d, std::uint64_t seed,
                                                          std::size_t oversample_factor, unsigned threads)
{
    if (d < 3 || d > 64) throw ContractError("build_erdos_furedi needs 3 <= d <= 64");
    if (oversample_factor < 1) throw ContractError("oversample_factor must be >= 1");
    auto target = erdos_furedi_target(d).convert_to<std::uint64_t>();
    std::uint64_t cube = d >= 63 ? ~std::uint64_t(0) : (std::uint64_t(1) << d);
    std::uint64_t want = std::max<std::uint64_t>(oversample_factor * target, std::min<std::uint64_t>(cube, 2 * d));
    want = std::min(want, cube);
    if (want > 20000) throw ContractError("requested sample is too large for the cubic triple scan");
    std::uint64_t mask = d == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << d) - 1;

    ConstructionStats st;
    st.requested_params = {{"d", std::to_string(d)}, {"oversample_factor", std::to_string(oversample_factor)}};
    st.seed = seed;
    st.extra = {{"target", std::to_string(target)}};
    for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
        SplitMix64 rng(attempt == 0 ? seed : mix_seed(seed, attempt));
        std::vector<std::uint64_t> pts;
        std::unordered_set<std::uint64_t> seen;
        while (pts.size() < want) {
            std::uint64_t v = rng.next() & mask;
            if (seen.insert(v).second) pts.push_back(v);
        }
        std::size_t n = pts.size();
        std::vector<std::vector<Triple>> per(n);
        parallel_chunks(n, threads, [&](std::size_t a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (b == a) continue;
                for (std::size_t c = b + 1; c < n; ++c) {
                    if (c == a) continue;
                    // <y-x, z-x> on 0/1 vectors counts coordinates where y and z both leave x
                    if (std::popcount((pts[a] ^ pts[b]) & (pts[a] ^ pts[c])) == 0)
                        per[a].push_back({std::uint32_t(a), std::uint32_t(b), std::uint32_t(c)});
                }
            }
        });
        std::vector<Triple> bad;
        for (auto& v : per) bad.insert(bad.end(), v.begin(), v.end());
        auto keep = greedy_delete(n, bad);
        st.attempts = attempt + 1;
        st.sampled = n;
        st.bad_triples_found = bad.size();
        st.deleted = n - keep.size();
        st.final_size = keep.size();
        if (keep.empty()) continue;
        std::vector<Scalar> c;
        for (auto i : keep)
            for (std::size_t j = 0; j < d; ++j) c.push_back(Scalar::integer(static_cast<long long>((pts[i] >> j) & 1)));
        PointSet X(d, std::move(c), ScalarKind::Integer);
        if (X.size() >= 3) {
            VerifyOptions vo;
            vo.threads = threads;
            auto rep = verify(X, vo);
            if (rep.classification != Classification::Acute)
                throw ContractError("internal: Erdos-Furedi output failed re-verification");
        }
        return {X, st};
    }
    throw ConstructionError("deletion consumed all points in every attempt", st);
}

ProductSample sample_product_points(std::size_t base_size, std::size_t n, std::size_t count, std::uint64_t seed)
{
    ProductSample s;
    s.n = n;
    s.idx.resize(count * n);
    SplitMix64 rng(seed);
    for (auto& v : s.idx) v = static_cast<std::uint32_t>(rng.below(base_size));
    return s;
}

PointSet product_points(const BaseSetCatalogEntry& base, const ProductSample& sample, const std::vector<std::size_t>& keep)
{
    std::size_t d0 = base.dim, n = sample.n;
    std::vector<Scalar> c;
    c.reserve(keep.size() * n * d0);
    for (auto r : keep)
        for (std::size_t t = 0; t < n; ++t)
            for (std::size_t j = 0; j < d0; ++j) c.push_back(base.points.at(sample.idx[r * n + t], j));
    return PointSet(n * d0, std::move(c), base.points.kind(), true);
}

std::uint64_t theorem1_m(std::size_t n, std::size_t d0, double epsilon)
{
    double e = (1.0 - epsilon) / 2.0 * static_cast<double>(n) * static_cast<double>(d0);
    if (e > 15.0) throw ContractError("2^((1-eps)/2 n d0) exceeds the supported sample size (m <= 2^15)");
    return static_cast<std::uint64_t>(std::ceil(std::exp2(e)));
}

namespace {

struct BaseInts {
    std::size_t size = 0;
    std::vector<long long> gram;  // base Gram matrix after integer scaling
    BigInt scale2 = 1;
};

BaseInts base_ints(const BaseSetCatalogEntry& base)
{
    IntFrame f = make_int_frame(base.points);
    BaseInts b;
    b.size = f.n;
    b.scale2 = f.scale * f.scale;
    b.gram.resize(f.n * f.n);
    for (std::size_t i = 0; i < f.n; ++i)
        for (std::size_t j = 0; j < f.n; ++j) {
            BigInt s = 0;
            for (std::size_t t = 0; t < f.d; ++t) s += f.big[i * f.d + t] * f.big[j * f.d + t];
            if (s > BigInt(1) << 40) throw ContractError("base set coordinates too large for the product scan");
            b.gram[i * f.n + j] = s.convert_to<long long>();
        }
    return b;
}

}  // namespace

std::vector<Triple> theorem1_bad_triples(const BaseSetCatalogEntry& base, const ProductSample& sample,
                                         double epsilon, bool use_prefilter, unsigned threads)
{
    BaseInts b = base_ints(base);
    std::size_t N = sample.count(), n = sample.n, B = b.size;
    // threshold (eps/2) n s in frame units, as num/den
    Rational eps = exact_from_double(epsilon);
    Rational thr = eps / 2 * Rational(BigInt(n)) * base.s.to_rational() * Rational(b.scale2);
    // dot products are integers here, so s <= thr iff s <= floor(thr)
    BigInt thr_floor = numerator(thr) / denominator(thr);
    if (thr < 0 && thr_floor * denominator(thr) != numerator(thr)) thr_floor -= 1;
    if (boost::multiprecision::abs(thr_floor) > BigInt(1) << 62) throw ContractError("threshold does not fit the integer scan");
    const long long thr_int = thr_floor.convert_to<long long>();
    // prefilter: a_ij + a_ik >= (1 - eps/2) n, with integer counts: >= ceil of the right side
    Rational need = (1 - eps / 2) * Rational(BigInt(n));
    BigInt need_ceil = numerator(need) / denominator(need);
    if (need_ceil * denominator(need) < numerator(need)) need_ceil += 1;
    const long long agree_need = need_ceil.convert_to<long long>();

    std::vector<long long> G(N * N);
    std::vector<std::uint8_t> agree(N * N);
    parallel_chunks(N, threads, [&](std::size_t i) {
        for (std::size_t j = 0; j < N; ++j) {
            long long g = 0;
            unsigned a = 0;
            for (std::size_t t = 0; t < n; ++t) {
                auto u = sample.idx[i * n + t], v = sample.idx[j * n + t];
                g += b.gram[u * B + v];
                a += u == v;
            }
            G[i * N + j] = g;
            agree[i * N + j] = static_cast<std::uint8_t>(a);
        }
    });
    std::vector<std::vector<Triple>> per(N);
    parallel_chunks(N, threads, [&](std::size_t i) {
        const long long gii = G[i * N + i];
        for (std::size_t j = 0; j < N; ++j) {
            if (j == i) continue;
            const long long gij = G[i * N + j];
            const unsigned aij = agree[i * N + j];
            const long long* gj = &G[j * N];
            const long long* gi = &G[i * N];
            for (std::size_t k = j + 1; k < N; ++k) {
                if (k == i) continue;
                if (use_prefilter && static_cast<long long>(aij + agree[i * N + k]) < agree_need) continue;
                long long s = gii - gij - gi[k] + gj[k];
                if (s <= thr_int)
                    per[i].push_back({std::uint32_t(i), std::uint32_t(j), std::uint32_t(k)});
            }
        }
    });
    std::vector<Triple> bad;
    for (auto& v : per) bad.insert(bad.end(), v.begin(), v.end());
    return bad;
}

std::pair<PointSet, ConstructionStats> build_product_theorem1(const BaseSetCatalogEntry& base, std::size_t n,
                                                              double epsilon, std::uint64_t seed, unsigned threads)
{
    if (!(epsilon > 0 && epsilon < 1)) throw ContractError("epsilon must lie in (0, 1)");
    if (n < 1) throw ContractError("n must be >= 1");
    if (base.points.size() < 3) throw ContractError("base set needs at least 3 points");
    {
        auto ms = min_scalar_product(base.points);
        if (ms.first.sign() <= 0 || ms.first != base.s) throw ContractError("base entry s does not match its points");
        if (squared_diameter(base.points).value != base.R_sq) throw ContractError("base entry R^2 does not match");
    }
    std::uint64_t m = theorem1_m(n, base.dim, epsilon);
    Rational eps = exact_from_double(epsilon);
    Rational tau = eps / 2 * base.s.to_rational() / base.R_sq.to_rational();

    ConstructionStats st;
    st.requested_params = {{"base_dim", std::to_string(base.dim)},
                           {"base_size", std::to_string(base.points.size())},
                           {"n", std::to_string(n)},
                           {"epsilon", format_double(epsilon)}};
    st.seed = seed;
    st.guarantee = ThresholdQuery{tau, true};
    st.extra = {{"m", std::to_string(m)},
                {"exponent", format_double((1.0 - epsilon) / 2.0 * double(n) * double(base.dim))},
                {"scalar_threshold", format_rational(eps / 2 * Rational(BigInt(n)) * base.s.to_rational())}};
    std::uint64_t best_final = 0;
    for (std::uint64_t attempt = 0; attempt <= 8; ++attempt) {
        std::uint64_t s = attempt == 0 ? seed : mix_seed(seed, attempt);
        ProductSample sample = sample_product_points(base.points.size(), n, 2 * m, s);
        auto bad = theorem1_bad_triples(base, sample, epsilon, true, threads);
        auto keep = greedy_delete(sample.count(), bad);
        st.attempts = attempt + 1;
        st.sampled = sample.count();
        st.bad_triples_found = bad.size();
        st.deleted = sample.count() - keep.size();
        st.final_size = keep.size();
        best_final = std::max<std::uint64_t>(best_final, keep.size());
        if (keep.size() < m) continue;

        PointSet raw = product_points(base, sample, keep);
        // with three or more survivors a repeated point always sits in a bad triple
        if (raw.has_duplicates()) continue;
        PointSet X = raw.with_raw(false);
        Rational bound = base.R_sq.to_rational() * Rational(BigInt(n));
        if (squared_diameter(X).value.to_rational() > bound)
            throw ContractError("internal: pair bound |x-y|^2 <= R^2 n violated");
        if (X.size() >= 3) {
            VerifyOptions vo;
            vo.threads = threads;
            auto thr = verify_threshold(X, *st.guarantee, vo);
            MinScalarOptions mo;
            mo.threads = threads;
            auto ms = min_scalar_product(X, mo);
            Rational floor_s = eps / 2 * Rational(BigInt(n)) * base.s.to_rational();
            if (!thr.pass || !(ms.first.to_rational() > floor_s))
                throw ContractError("internal: product construction failed its own guarantee");
            st.extra.emplace_back("min_scalar_product", ms.first.str());
        }
        return {X, st};
    }
    st.extra.emplace_back("best_final_size", std::to_string(best_final));
    throw ConstructionError("retries exhausted: no attempt kept m = " + std::to_string(m) +
                                " points (best " + std::to_string(best_final) + ")",
                            st);
}

std::vector<std::vector<double>> sample_near_orthogonal(std::size_t d, std::size_t m, double epsilon,
                                                        std::uint64_t seed, std::size_t max_retries)
{
    if (m < 2) throw ContractError("sample_near_orthogonal needs m >= 2");
    if (!(epsilon > 0)) throw ContractError("epsilon must be positive");
    if (d < 1) throw ContractError("dimension must be positive");
    const double bound = std::sin(epsilon);
    for (std::size_t r = 0; r < max_retries; ++r) {
        SplitMix64 rng(mix_seed(seed, r));
        std::vector<std::vector<double>> v(m, std::vector<double>(d));
        for (auto& x : v) {
            double nn = 0;
            for (auto& c : x) {
                c = rng.normal();
                nn += c * c;
            }
            nn = std::sqrt(nn);
            for (auto& c : x) c /= nn;
        }
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i)
            for (std::size_t j = i + 1; j < m && ok; ++j) {
                double dot = 0;
                for (std::size_t t = 0; t < d; ++t) dot += v[i][t] * v[j][t];
                ok = std::fabs(dot) < bound;
            }
        if (ok) return v;
    }
    throw ContractError("sample_near_orthogonal: max_retries exceeded");
}

PointSet lacunary_from_vectors(const std::vector<std::vector<double>>& v, std::size_t d, double lambda)
{
    std::size_t m = v.size();
    if (m > 20) throw ContractError("lacunary sets support m <= 20");
    std::vector<std::vector<double>> rows;
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
        std::vector<double> p(d, 0.0);
        for (std::size_t t = 0; t < m; ++t)
            if (mask >> t & 1) {
                double w = std::pow(lambda, double(t + 1));
                for (std::size_t j = 0; j < d; ++j) p[j] += w * v[t][j];
            }
        rows.push_back(std::move(p));
    }
    return PointSet::from_doubles(rows);
}

std::pair<PointSet, ConstructionStats> build_lacunary_prop1(std::size_t d, std::size_t m, double epsilon,
                                                            double lambda, std::uint64_t seed)
{
    if (m > 20) throw ContractError("m must be <= 20");
    if (!(lambda >= 2)) throw ContractError("lambda must be >= 2");
    if (!(epsilon > 0 && epsilon < M_PI / 4)) throw ContractError("epsilon must lie in (0, pi/4)");
    if (d < 1) throw ContractError("dimension must be positive");
    std::vector<std::vector<double>> v;
    if (m == 1) {
        SplitMix64 rng(mix_seed(seed, 0));
        std::vector<double> x(d);
        double nn = 0;
        for (auto& c : x) {
            c = rng.normal();
            nn += c * c;
        }
        for (auto& c : x) c /= std::sqrt(nn);
        v.push_back(x);
    } else if (m >= 2) {
        v = sample_near_orthogonal(d, m, epsilon, seed);
    }
    PointSet X = lacunary_from_vectors(v, d, lambda);
    ConstructionStats st;
    st.requested_params = {{"d", std::to_string(d)},
                           {"m", std::to_string(m)},
                           {"epsilon", format_double(epsilon)},
                           {"lambda", format_double(lambda)}};
    st.seed = seed;
    st.sampled = X.size();
    st.final_size = X.size();
    double alpha = M_PI / 2 + 2 * epsilon;
    st.extra = {{"max_angle_bound", format_double(alpha)}};
    if (X.size() >= 3 && X.size() <= 4096) {
        auto rep = verify(X);
        double max_angle = std::acos(rep.min_cos);
        st.extra.emplace_back("max_angle", format_double(max_angle));
        st.extra.emplace_back("within_bound", rep.min_cos >= std::cos(alpha) ? "true" : "false");
    }
    return {X, st};
}

BaseSetCatalogEntry catalog_small(std::size_t d)
{
    BaseSetCatalogEntry e;
    e.dim = d;
    if (d == 2) {
        e.points = PointSet::from_integers({{0, 0}, {4, 0}, {2, 3}});
        e.s = Scalar::integer(5);
        e.R_sq = Scalar::integer(16);
        e.provenance = "hand-picked acute triangle";
    } else if (d == 3) {
        // square with opposite corners lifted by 1, plus a point high above its centre
        e.points = PointSet::from_integers({{0, 0, 0}, {4, 0, 1}, {0, 4, 1}, {4, 4, 0}, {2, 2, 4}});
        e.s = Scalar::integer(1);
        e.R_sq = Scalar::integer(32);
        e.provenance = "small-integer search over twisted squares with an apex, verified exactly";
    } else {
        throw ContractError("catalog_small supports d in {2, 3}");
    }
    return e;
}

}  // namespace acute
