#include "acute/pointset.hpp"
#include "acute/pointset_io.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

using namespace acute;

TEST_SUITE("scalar")
{
    TEST_CASE("rational text is canonical")
    {
        CHECK(format_rational(Rational(10, 6)) == "5/3");
        CHECK(format_rational(Rational(-4, 2)) == "-2");
        CHECK(parse_rational("5/3") == Rational(5, 3));
        CHECK(parse_rational("-7") == Rational(-7));
        CHECK_THROWS_AS(parse_rational("10/6"), ContractError);
        CHECK_THROWS_AS(parse_rational("1/-3"), ContractError);
        CHECK_THROWS_AS(parse_rational("1/0"), ContractError);
        CHECK_THROWS_AS(parse_rational("x"), ContractError);
    }

    TEST_CASE("doubles print shortest and convert exactly")
    {
        CHECK(format_double(0.1) == "0.1");
        CHECK(format_double(1.0) == "1");
        CHECK(parse_double("0.1") == 0.1);
        CHECK(exact_from_double(0.5) == Rational(1, 2));
        CHECK(exact_from_double(0.1) != Rational(1, 10));
        CHECK(exact_from_double(0.1).convert_to<double>() == 0.1);
        CHECK_THROWS_AS(parse_double("inf"), ContractError);
        CHECK_THROWS_AS(parse_double("nan"), ContractError);
    }

    TEST_CASE("mixed-kind arithmetic is rejected")
    {
        CHECK_THROWS_AS(Scalar::integer(1) + Scalar(0.5), ContractError);
        CHECK((Scalar::integer(2) * Scalar::integer(3)).str() == "6");
        CHECK((Scalar::rational(1, 2) + Scalar::rational(1, 3)).str() == "5/6");
    }

    TEST_CASE("decimal flags convert without rounding")
    {
        CHECK(parse_exact_decimal("0.1") == Rational(1, 10));
        CHECK(parse_exact_decimal("-2.50") == Rational(-5, 2));
        CHECK(parse_exact_decimal("1e-3") == Rational(1, 1000));
        CHECK(parse_exact_decimal("3/4") == Rational(3, 4));
        CHECK_THROWS_AS(parse_exact_decimal("abc"), ContractError);
        CHECK(parse_angle("pi/2") == doctest::Approx(M_PI / 2));
        CHECK(parse_angle("3pi/4") == doctest::Approx(3 * M_PI / 4));
        CHECK(parse_angle("3*pi/4") == doctest::Approx(3 * M_PI / 4));
        CHECK(parse_angle("pi/2-0.3") == doctest::Approx(M_PI / 2 - 0.3));
        CHECK(parse_angle("1.25") == 1.25);
    }
}

TEST_SUITE("pointset")
{
    TEST_CASE("duplicates are rejected unless raw")
    {
        CHECK_THROWS_AS(PointSet::from_integers({{0, 0}, {1, 0}, {0, 0}}), ContractError);
        auto R = PointSet::from_integers({{0, 0}, {1, 0}, {0, 0}}, true);
        CHECK(R.raw());
        CHECK(R.has_duplicates());
        CHECK_THROWS_AS(PointSet::from_doubles({{0.0}, {1.0}, {-0.0}}), ContractError);
    }

    TEST_CASE("ragged and empty inputs")
    {
        CHECK_THROWS_AS(PointSet::from_integers({{0, 0}, {1}}), ContractError);
        CHECK_THROWS_AS(PointSet::from_integers({}), ContractError);
    }

    TEST_CASE("scalar products and diameter")
    {
        auto X = PointSet::from_integers({{0, 0}, {4, 0}, {2, 3}});
        CHECK(scalar_product_at(X, 0, 1, 2).str() == "8");
        CHECK(scalar_product_at(X, 2, 0, 1).str() == "5");
        auto d = squared_diameter(X);
        CHECK(d.value.str() == "16");
        CHECK_THROWS_AS(scalar_product_at(X, 0, 0, 1), ContractError);
    }

    TEST_CASE("min scalar product against brute force")
    {
        SplitMix64 g(7);
        for (int t = 0; t < 200; ++t) {
            auto X = t % 2 ? th::random_int_set(g, 7, 3, 5) : th::random_rat_set(g, 6, 2, 9, 4);
            auto P = th::to_pts(X);
            Rational best = 0;
            bool first = true;
            for (std::size_t a = 0; a < P.size(); ++a)
                for (std::size_t b = 0; b < P.size(); ++b)
                    for (std::size_t c = b + 1; c < P.size(); ++c)
                        if (a != b && a != c) {
                            Rational v = oracle::dot(P, a, b, c);
                            if (first || v < best) best = v;
                            first = false;
                        }
            CHECK(min_scalar_product(X).first.to_rational() == best);
        }
    }

    TEST_CASE("hypercube layout")
    {
        auto H = hypercube(3);
        CHECK(H.size() == 8);
        CHECK(H.at(5, 0).str() == "1");
        CHECK(H.at(5, 1).str() == "0");
        CHECK(H.at(5, 2).str() == "1");
    }
}

TEST_SUITE("io")
{
    TEST_CASE("triangle file parses")
    {
        std::istringstream in("acuteset-pointset v1\ndim=2 count=3 scalar=int raw=0\n0 0\n4 0\n2 3\n");
        auto X = parse_pointset(in);
        CHECK(X.dim() == 2);
        CHECK(X.size() == 3);
    }

    TEST_CASE("errors name the line")
    {
        auto err = [](const std::string& text) {
            std::istringstream in(text);
            try {
                parse_pointset(in, "f");
            } catch (const ContractError& e) {
                return std::string(e.what());
            }
            return std::string();
        };
        CHECK(err("acuteset-pointset v1\ndim=2 count=2 scalar=int raw=0\n0 0\n1 2 3\n").find("f:4:") == 0);
        CHECK(err("acuteset-pointset v2\n").find("f:1:") == 0);
        CHECK(err("acuteset-pointset v1\ndim=2 count=2 scalar=real raw=0\n").find("f:2:") == 0);
        CHECK(err("acuteset-pointset v1\ndim=2 count=2 scalar=rat raw=0\n1/2 0\n2/4 1\n").find("f:4:") == 0);
        CHECK(err("acuteset-pointset v1\ndim=1 count=2 scalar=int raw=0\n1\n").find("f:4:") == 0);
        CHECK(err("acuteset-pointset v1\ndim=1 count=2 scalar=int raw=0\n1\n1\n").find("duplicate") != std::string::npos);
        CHECK(err("acuteset-pointset v1\ndim=1 count=2 scalar=int raw=1\n1\n1\n").empty());
    }

    TEST_CASE("rational entries round-trip")
    {
        auto X = PointSet::from_rationals({{Rational(5, 3), Rational(0)}, {Rational(-1, 7), Rational(2)}});
        std::istringstream in(format_pointset(X));
        auto Y = parse_pointset(in);
        CHECK(Y == X);
        CHECK(format_pointset(Y).find("5/3 0\n") != std::string::npos);
    }
}

TEST_SUITE("properties")
{
    TEST_CASE("file round-trip identity for every scalar kind")
    {
        SplitMix64 g(2024);
        for (int t = 0; t < 3000; ++t) {
            std::size_t n = 1 + g.below(8), d = 1 + g.below(5);
            PointSet X;
            switch (t % 4) {
            case 0: X = th::random_int_set(g, n, d, 1000000); break;
            case 1: X = th::random_rat_set(g, n, d, 50, 1000); break;
            case 2: X = th::random_f64_set(g, n, d); break;
            default: {
                // awkward doubles: subnormals, huge and tiny magnitudes
                std::vector<std::vector<double>> rows(n, std::vector<double>(d));
                for (auto& r : rows)
                    for (auto& v : r) {
                        double e = static_cast<double>(g.below(600)) - 300;
                        v = (g.uniform() - 0.5) * std::pow(10.0, e);
                        if (g.below(10) == 0) v = std::numeric_limits<double>::denorm_min() * static_cast<double>(g.below(100) + 1);
                    }
                try {
                    X = PointSet::from_doubles(rows);
                } catch (const ContractError&) {
                    X = PointSet::from_doubles(rows, true);
                }
            }
            }
            std::string text = format_pointset(X);
            std::istringstream in(text);
            auto Y = parse_pointset(in);
            REQUIRE(Y == X);
            CHECK(format_pointset(Y) == text);
            ++th::fuzz_cases();
        }
    }
}
