#include "acute/constructions.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace acute;

namespace {

// Naive max-degree deletion: recount every round.
std::vector<std::size_t> naive_delete(std::size_t n, const std::vector<Triple>& bad)
{
    std::vector<char> gone(n, 0), hit(bad.size(), 0);
    for (;;) {
        std::vector<std::size_t> deg(n, 0);
        bool any = false;
        for (std::size_t t = 0; t < bad.size(); ++t) {
            if (hit[t]) continue;
            any = true;
            for (auto v : bad[t]) ++deg[v];
        }
        if (!any) break;
        std::size_t best = 0;
        for (std::size_t v = 1; v < n; ++v)
            if (deg[v] > deg[best]) best = v;
        gone[best] = 1;
        for (std::size_t t = 0; t < bad.size(); ++t)
            if (std::find(bad[t].begin(), bad[t].end(), best) != bad[t].end()) hit[t] = 1;
    }
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < n; ++v)
        if (!gone[v]) keep.push_back(v);
    return keep;
}

// Every (apex, leg1 < leg2) with <p_l1 - p_a, p_l2 - p_a> <= thr, over distinct indices.
std::vector<Triple> naive_bad(const oracle::Pts& P, const Rational& thr)
{
    std::vector<Triple> out;
    for (std::size_t a = 0; a < P.size(); ++a)
        for (std::size_t b = 0; b < P.size(); ++b)
            for (std::size_t c = b + 1; c < P.size(); ++c)
                if (a != b && a != c && oracle::dot(P, a, b, c) <= thr)
                    out.push_back({std::uint32_t(a), std::uint32_t(b), std::uint32_t(c)});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> iota(std::size_t n)
{
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace

TEST_SUITE("constructions")
{
    TEST_CASE("Erdos-Furedi targets")
    {
        CHECK(erdos_furedi_target(30) == 37);
        CHECK(erdos_furedi_target(4) == 0);
        for (std::size_t d = 3; d <= 64; ++d) CHECK(erdos_furedi_target(d) == oracle::ef_target(d));
        CHECK_THROWS_AS(build_erdos_furedi(2, 1), ContractError);
        CHECK_THROWS_AS(build_erdos_furedi(65, 1), ContractError);
    }

    TEST_CASE("Erdos-Furedi output is acute and reproducible")
    {
        for (std::size_t d : {4, 8, 12, 16}) {
            auto [X, st] = build_erdos_furedi(d, 5);
            CHECK(st.final_size == st.sampled - st.deleted);
            CHECK(X.size() == st.final_size);
            if (X.size() >= 3) CHECK(oracle::classify(th::to_pts(X)) == "acute");
            auto [Y, st2] = build_erdos_furedi(d, 5, 2, 4);
            CHECK(X == Y);
            CHECK(st.bad_triples_found == st2.bad_triples_found);
        }
        auto [X, st] = build_erdos_furedi(4, 1);
        CHECK(X.size() >= 3);
    }

    TEST_CASE("greedy deletion breaks every bad triple")
    {
        std::vector<Triple> bad{{0, 1, 2}, {0, 2, 3}, {1, 2, 3}};
        auto keep = greedy_delete(5, bad);
        // vertex 2 has degree 3 and goes first
        CHECK(keep == std::vector<std::size_t>{0, 1, 3, 4});
        CHECK(greedy_delete(3, {}) == std::vector<std::size_t>{0, 1, 2});
        CHECK_THROWS_AS(greedy_delete(2, bad), ContractError);
    }

    TEST_CASE("catalog entries")
    {
        auto t = catalog_small(2);
        CHECK(t.points.size() == 3);
        CHECK(t.s.str() == "5");
        CHECK(t.R_sq.str() == "16");
        auto f = catalog_small(3);
        CHECK(f.points.size() == 5);
        for (auto* e : {&t, &f}) {
            auto P = th::to_pts(e->points);
            CHECK(oracle::classify(P) == "acute");
            Rational s = oracle::dot(P, 0, 1, 2), r = 0;
            for (std::size_t a = 0; a < P.size(); ++a)
                for (std::size_t b = 0; b < P.size(); ++b) {
                    if (a == b) continue;
                    r = std::max(r, oracle::dot(P, a, b, b));
                    for (std::size_t c = b + 1; c < P.size(); ++c)
                        if (c != a) s = std::min(s, oracle::dot(P, a, b, c));
                }
            CHECK(e->s.to_rational() == s);
            CHECK(e->R_sq.to_rational() == r);
        }
        CHECK_THROWS_AS(catalog_small(4), ContractError);
    }

    TEST_CASE("Theorem 1 sample size")
    {
        CHECK(theorem1_m(20, 2, 0.5) == 1024);
        CHECK(theorem1_m(4, 2, 0.5) == 4);
        CHECK(theorem1_m(3, 3, 0.5) == 5);  // 2^2.25 rounded up
    }

    TEST_CASE("Theorem 1 product construction meets its guarantee")
    {
        auto base = catalog_small(2);
        for (auto [n, eps] : {std::pair<std::size_t, double>{6, 0.5}, {10, 0.7}, {20, 0.9}}) {
            auto [X, st] = build_product_theorem1(base, n, eps, 11);
            CHECK(st.final_size >= theorem1_m(n, 2, eps));
            CHECK(st.final_size == st.sampled - st.deleted);
            REQUIRE(st.guarantee);
            CHECK(st.guarantee->tau == exact_from_double(eps) * 5 / 32);
            auto P = th::to_pts(X);
            Rational thr = exact_from_double(eps) / 2 * Rational(BigInt(n)) * 5;
            for (std::size_t a = 0; a < P.size(); ++a)
                for (std::size_t b = 0; b < P.size(); ++b) {
                    if (a == b) continue;
                    CHECK(oracle::dot(P, a, b, b) <= 16 * Rational(BigInt(n)));
                    for (std::size_t c = b + 1; c < P.size(); ++c)
                        if (c != a) REQUIRE(oracle::dot(P, a, b, c) > thr);
                }
            auto [Y, st2] = build_product_theorem1(base, n, eps, 11, 3);
            CHECK(X == Y);
        }
    }

    TEST_CASE("lacunary sets")
    {
        auto X = lacunary_from_vectors({{1, 0}, {0, 1}}, 2, 10);
        std::set<std::vector<double>> got;
        for (std::size_t i = 0; i < X.size(); ++i) got.insert({X.at(i, 0).to_double(), X.at(i, 1).to_double()});
        CHECK(got == std::set<std::vector<double>>{{0, 0}, {10, 0}, {0, 100}, {10, 100}});
        CHECK(oracle::classify(th::to_pts(X)) == "non-obtuse");
        auto one = lacunary_from_vectors({}, 3, 4);
        CHECK(one.size() == 1);
        CHECK(one.at(0, 2).to_double() == 0);

        auto [L, st] = build_lacunary_prop1(30, 8, 0.2, 16, 7);
        CHECK(L.size() == 256);
        auto rep = verify(L);
        CHECK(std::acos(rep.min_cos) <= M_PI / 2 + 0.4);
    }

    TEST_CASE("near-orthogonal sampling")
    {
        auto v = sample_near_orthogonal(200, 8, 0.2, 3);
        REQUIRE(v.size() == 8);
        for (std::size_t i = 0; i < v.size(); ++i) {
            double n = 0;
            for (double x : v[i]) n += x * x;
            CHECK(n == doctest::Approx(1.0).epsilon(1e-12));
            for (std::size_t j = i + 1; j < v.size(); ++j) {
                double c = 0;
                for (std::size_t t = 0; t < 200; ++t) c += v[i][t] * v[j][t];
                CHECK(std::fabs(c) < std::sin(0.2));
            }
        }
        CHECK_THROWS_AS(sample_near_orthogonal(2, 3, 0.1, 1, 200), ContractError);
    }

    TEST_CASE("perturbed hypercube")
    {
        for (std::size_t d : {3, 4}) {
            auto [X, st] = build_perturbed_hypercube(d, 11);
            CHECK(X.size() == (std::size_t(1) << (d - 1)) + 1);
            CHECK(oracle::classify(th::to_pts(X)) == "acute");
            auto [Y, st2] = build_perturbed_hypercube(d, 11);
            CHECK(X == Y);
        }
        CHECK_THROWS_AS(build_perturbed_hypercube(2, 1), ContractError);
    }
}

TEST_SUITE("properties")
{
    TEST_CASE("greedy deletion matches the naive recount")
    {
        SplitMix64 g(616);
        for (int t = 0; t < 1500; ++t) {
            std::size_t n = 3 + g.below(12), k = g.below(25);
            std::vector<Triple> bad;
            for (std::size_t i = 0; i < k; ++i) {
                std::uint32_t a = g.below(n), b = g.below(n), c = g.below(n);
                if (a == b || a == c || b == c) continue;
                if (b > c) std::swap(b, c);
                bad.push_back({a, b, c});
            }
            auto keep = greedy_delete(n, bad);
            CHECK(keep == naive_delete(n, bad));
            std::set<std::size_t> kept(keep.begin(), keep.end());
            for (auto& tr : bad) CHECK_FALSE((kept.count(tr[0]) && kept.count(tr[1]) && kept.count(tr[2])));
            ++th::fuzz_cases();
        }
    }

    TEST_CASE("bad-triple prefilter is sound")
    {
        SplitMix64 g(90210);
        auto tri = catalog_small(2), five = catalog_small(3);
        for (int t = 0; t < 300; ++t) {
            const auto& base = t % 2 ? tri : five;
            std::size_t n = 1 + g.below(8), cnt = 3 + g.below(14);
            double eps = t % 2 ? (1 + g.below(7)) / 8.0 : (1 + g.below(9)) / 10.0;
            auto s = sample_product_points(base.points.size(), n, cnt, g.next());
            auto full = theorem1_bad_triples(base, s, eps, false);
            auto pre = theorem1_bad_triples(base, s, eps, true, 2);
            std::sort(full.begin(), full.end());
            std::sort(pre.begin(), pre.end());
            CHECK(pre == full);
            auto P = th::to_pts(product_points(base, s, iota(cnt)));
            Rational thr = exact_from_double(eps) / 2 * Rational(BigInt(n)) * base.s.to_rational();
            CHECK(full == naive_bad(P, thr));
            ++th::fuzz_cases();
        }
    }
}
