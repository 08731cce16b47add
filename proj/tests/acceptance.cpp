// One PASS/FAIL line per acceptance criterion. Usage: acceptance [--unit-tests PATH] [ids...]
#include "acute/bounds.hpp"
#include "acute/cli.hpp"
#include "acute/constructions.hpp"
#include "acute/pointset_io.hpp"
#include "acute/ramsey_cover.hpp"
#include "acute/verifier.hpp"
#include "acute/volume_cert.hpp"
#include "helpers.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace acute;

namespace {

// Pinned limits.
constexpr double kBoundsSeconds = 1;
constexpr double kHypercubeSeconds = 60;
constexpr double kErdosFurediSeconds = 30;
constexpr double kTheorem1Seconds = 600;
constexpr double kRamseySeconds = 120;
constexpr double kLemma1Seconds = 60;
constexpr double kTheorem2Seconds = 300;
constexpr double kVerifySeconds = 300;
constexpr std::uint64_t kMinFuzzCases = 10000;
constexpr unsigned kWorkers = 8;

struct Outcome {
    bool pass;
    std::string detail;
};

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string secs(double s)
{
    std::ostringstream o;
    o.precision(3);
    o << s << "s";
    return o.str();
}

struct CliResult {
    int code;
    std::string out;
};

CliResult cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "acuteset");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str()};
}

std::string without_elapsed(const std::string& report)
{
    std::istringstream in(report);
    std::string line, keep;
    while (std::getline(in, line))
        if (line.rfind("elapsed", 0) != 0) keep += line + "\n";
    return keep;
}

bool contains(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

// Exact acuteness by brute force, independent of the library verifier.
bool brute_acute(const PointSet& X)
{
    auto P = th::to_pts(X);
    for (std::size_t a = 0; a < P.size(); ++a)
        for (std::size_t b = 0; b < P.size(); ++b)
            for (std::size_t c = b + 1; c < P.size(); ++c)
                if (a != b && a != c && oracle::dot(P, a, b, c) <= 0) return false;
    return true;
}

Outcome criterion1()
{
    Stopwatch sw;
    auto b = cli({"bounds", "--from", "2", "--to", "3"});
    bool ok = b.code == 0 && contains(b.out, "quantity: f(2)\n    lower: 3\n    upper: 3\n    status: exact") &&
              contains(b.out, "quantity: f(3)\n    lower: 5\n    upper: 5\n    status: exact");
    std::string detail = ok ? "f(2)=3 f(3)=5" : "bounds rows differ";
    for (std::size_t d : {2, 3}) {
        auto r = cli({"catalog", "--dim", std::to_string(d)});
        auto e = catalog_small(d);
        std::size_t want = d == 2 ? 3 : 5;
        bool good = r.code == 0 && contains(r.out, "classification: acute") && e.points.size() == want &&
                    brute_acute(e.points);
        detail += " catalog" + std::to_string(d) + "=" + std::to_string(e.points.size()) + (good ? "" : "(bad)");
        ok = ok && good;
    }
    double t = sw.seconds();
    ok = ok && t < kBoundsSeconds;
    return {ok, detail + " time " + secs(t) + " (limit 1s)"};
}

Outcome criterion2()
{
    // restarts sized to fit the time limit: ~0.02 s, ~0.3 s and ~11 s per attempt
    const std::map<std::size_t, std::size_t> retries{{4, 48}, {5, 300}, {6, 24}};
    bool ok = true;
    std::string detail;
    for (auto [d, tries] : retries) {
        Stopwatch sw;
        std::string part;
        bool good = false;
        try {
            auto [X, st] = build_perturbed_hypercube(d, 1, Rational(1, 4), tries, kWorkers);
            std::size_t want = (std::size_t(1) << (d - 1)) + 1;
            good = X.size() == want && brute_acute(X);
            part = std::to_string(X.size()) + (good ? " acute" : " NOT acute");
        } catch (const ConstructionError& e) {
            part = "none after " + std::to_string(e.stats.attempts) + " attempts (" + e.what() + ")";
        }
        double t = sw.seconds();
        good = good && t < kHypercubeSeconds;
        ok = ok && good;
        detail += "d=" + std::to_string(d) + ": " + part + " in " + secs(t) + "; ";
    }
    return {ok, detail + "limit 60s each"};
}

Outcome criterion3()
{
    Stopwatch sw;
    auto [X, st] = build_erdos_furedi(30, 1, 2, kWorkers);
    VerifyOptions vo;
    vo.threads = kWorkers;
    auto rep = verify(X, vo);
    // independent integer scan: every coordinate is 0 or 1
    bool all_pos = true;
    for (std::size_t a = 0; a < X.size() && all_pos; ++a)
        for (std::size_t b = 0; b < X.size() && all_pos; ++b)
            for (std::size_t c = b + 1; c < X.size(); ++c) {
                if (a == b || a == c) continue;
                long long s = 0;
                for (std::size_t j = 0; j < 30; ++j) {
                    long long xa = X.at(a, j).to_rational().convert_to<long long>();
                    s += (X.at(b, j).to_rational().convert_to<long long>() - xa) *
                         (X.at(c, j).to_rational().convert_to<long long>() - xa);
                }
                if (s <= 0) {
                    all_pos = false;
                    break;
                }
            }
    double t = sw.seconds();
    bool ok = X.size() >= 37 && rep.classification == Classification::Acute && rep.exact && all_pos &&
              t < kErdosFurediSeconds;
    return {ok, "size " + std::to_string(X.size()) + " (need >= 37), integer scan " + (all_pos ? "acute" : "fails") +
                    ", time " + secs(t) + " (limit 30s)"};
}

Outcome criterion4()
{
    Stopwatch sw;
    auto base = catalog_small(2);
    std::string built;
    bool big_ok = false;
    try {
        auto [X, st] = build_product_theorem1(base, 20, 0.5, 1, kWorkers);
        MinScalarOptions mo;
        mo.threads = kWorkers;
        auto [s, w] = min_scalar_product(X, mo);
        auto diam = squared_diameter(X);
        big_ok = X.size() >= 1024 && X.dim() == 40 && s.to_rational() > 25 && diam.value.to_rational() <= 320;
        built = std::to_string(X.size()) + " points, min scalar " + s.str() + ", diameter^2 " + diam.value.str();
    } catch (const ConstructionError& e) {
        built = "no set: " + std::string(e.what());
    }
    double t = sw.seconds();
    // prefilter against the full scan on small instances
    std::size_t agree = 0, total = 0;
    SplitMix64 g(4);
    for (std::size_t n = 1; n <= 8; ++n)
        for (int rep = 0; rep < 10; ++rep) {
            auto s = sample_product_points(base.points.size(), n, 6 + g.below(20), g.next());
            auto full = theorem1_bad_triples(base, s, 0.5, false);
            auto pre = theorem1_bad_triples(base, s, 0.5, true, kWorkers);
            std::sort(full.begin(), full.end());
            std::sort(pre.begin(), pre.end());
            agree += full == pre;
            ++total;
        }
    bool ok = big_ok && agree == total && t < kTheorem1Seconds;
    return {ok, "n=20 eps=0.5: " + built + " in " + secs(t) + "; prefilter agrees on " + std::to_string(agree) + "/" +
                    std::to_string(total) + " instances with n <= 8"};
}

// Brute-force existence of x -> y -> z with one color.
bool has_two_path(const PairColoring& pc)
{
    std::size_t n = pc.n_points();
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t z = 0; z < n; ++z) {
                if (x == y || y == z || x == z) continue;
                int c = pc.color(x, y);
                if (c && pc.directed(x, y) && pc.directed(y, z) && pc.color(y, z) == c) return true;
            }
    return false;
}

// Counts (color, orientation) assignments on n points with m colors that have no 2-path.
std::pair<std::uint64_t, std::uint64_t> enumerate(std::size_t n, int m, bool& consistent)
{
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
    const std::uint64_t opts = 2 * static_cast<std::uint64_t>(m);
    std::uint64_t total = 1, none = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k) total *= opts;
    for (std::uint64_t code = 0; code < total; ++code) {
        PairColoring pc(n, m);
        std::uint64_t r = code;
        for (auto [i, j] : pairs) {
            int c = static_cast<int>(r % opts);
            r /= opts;
            if (c % 2) pc.set(i, j, 1 + c / 2);
            else pc.set(j, i, 1 + c / 2);
        }
        auto w = find_mono_2path(pc);
        if (w.has_value() != has_two_path(pc) || (w && !validate_two_path(pc, *w))) consistent = false;
        if (!w) ++none;
    }
    return {total, none};
}

Outcome criterion5()
{
    Stopwatch sw;
    bool consistent = true;
    auto [t5, n5] = enumerate(5, 2, consistent);
    auto [t4, n4] = enumerate(4, 2, consistent);
    auto [t3, n3] = enumerate(3, 1, consistent);
    auto [t2, n2] = enumerate(2, 1, consistent);
    double t = sw.seconds();
    bool ok = n5 == 0 && n4 > 0 && n3 == 0 && n2 > 0 && consistent && t < kRamseySeconds;
    std::ostringstream o;
    o << "m=2 N=5: " << t5 - n5 << "/" << t5 << " with witness; m=2 N=4: " << n4 << "/" << t4
      << " without; m=1 N=3: " << t3 - n3 << "/" << t3 << " with; m=1 N=2: " << n2 << "/" << t2
      << " without; finder matches brute force: " << (consistent ? "yes" : "no") << "; time " << secs(t)
      << " (limit 120s)";
    return {ok, o.str()};
}

Outcome criterion6()
{
    const double alpha = 3 * M_PI / 4;
    CoverOptions co;
    co.max_vectors = 8;
    auto cover = greedy_cap_cover(3, alpha, 1, co);
    std::size_t returned = 0, failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        SplitMix64 g(mix_seed(6, static_cast<std::uint64_t>(trial)));
        auto X = th::random_f64_set(g, 257, 3);
        auto r = extract_obtuse_witness(X, alpha, cover, true);
        if (!r.witness) continue;
        ++returned;
        auto P = th::to_pts(X);
        auto& w = *r.witness;
        Rational dot = oracle::dot(P, w.apex, w.leg1, w.leg2);
        Rational n1 = oracle::dot(P, w.apex, w.leg1, w.leg1), n2 = oracle::dot(P, w.apex, w.leg2, w.leg2);
        // angle >= 3pi/4 exactly when dot < 0 and 2 dot^2 >= n1 n2
        if (!(dot < 0 && 2 * dot * dot >= n1 * n2)) ++failures;
    }
    bool ok = failures == 0 && returned > 0;
    return {ok, std::to_string(cover.vectors.size()) + "-vector cover; " + std::to_string(returned) +
                    "/100 trials returned a triple; confirmation failures " + std::to_string(failures)};
}

Outcome criterion7()
{
    std::size_t runs = 0, good = 0;
    double slowest = 0;
    for (std::size_t d : {1, 2}) {
        const std::size_t need = (512 + 27 * d - 1) / (27 * d);
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            SplitMix64 g(mix_seed(7 + d, seed));
            auto X = th::random_int_set(g, 512, d, 1000000);
            Stopwatch sw;
            auto r = lemma1_chain(X, 1, seed);
            slowest = std::max(slowest, sw.seconds());
            ++runs;
            // recompute both volumes independently
            auto P = th::to_pts(X);
            auto vol = [&](const std::vector<std::size_t>& idx) -> Rational {
                oracle::Pts Q;
                for (auto i : idx) Q.push_back(P[i]);
                if (d == 2) return oracle::area2d(Q);
                Rational lo = Q[0][0], hi = lo;
                for (auto& q : Q) {
                    if (q[0] < lo) lo = q[0];
                    if (q[0] > hi) hi = q[0];
                }
                return hi - lo;
            };
            Rational va = vol(r.A), vb = vol(r.B);
            bool ok = r.exact && r.step_lower == need && r.B.size() - r.A.size() >= need &&
                      va == r.vol_A.value && vb == r.vol_B.value && vb <= 2 * va && vb > 0;
            good += ok;
        }
    }
    bool ok = good == runs && slowest < kLemma1Seconds;
    return {ok, std::to_string(good) + "/" + std::to_string(runs) +
                    " chains meet |B\\A| >= ceil(512/(27d)) and vol_B <= 2 vol_A exactly; slowest run " +
                    secs(slowest) + " (limit 60s)"};
}

Outcome criterion8()
{
    // Greedy random search for a planar set with every angle <= pi/2 - 0.3.
    Stopwatch sw;
    // the certificate takes the gap alpha below a right angle
    const double alpha = 0.3, c_alpha = std::cos(M_PI / 2 - alpha);
    SplitMix64 g(8);
    std::vector<std::vector<double>> pts;
    auto angle_ok = [&](const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& c) {
        double ux = b[0] - a[0], uy = b[1] - a[1], vx = c[0] - a[0], vy = c[1] - a[1];
        return ux * vx + uy * vy >= c_alpha * std::hypot(ux, uy) * std::hypot(vx, vy);
    };
    for (int cand = 0; cand < 200000 && pts.size() < 600; ++cand) {
        std::vector<double> p{g.uniform(), g.uniform()};
        bool ok = true;
        for (std::size_t i = 0; i < pts.size() && ok; ++i)
            for (std::size_t j = i + 1; j < pts.size() && ok; ++j)
                ok = angle_ok(p, pts[i], pts[j]) && angle_ok(pts[i], p, pts[j]) && angle_ok(pts[j], p, pts[i]);
        if (ok) pts.push_back(p);
    }
    std::string detail = "largest set found has " + std::to_string(pts.size()) + " points (need >= 600)";
    bool ok = false;
    if (pts.size() >= 600) {
        try {
            auto cert = theorem2_certificate(PointSet::from_doubles(pts), alpha, 1, kWorkers);
            ok = cert.disjointness_checked && cert.holds && sw.seconds() < kTheorem2Seconds;
            detail += cert.holds ? "; certificate holds" : "; certificate fails";
        } catch (const CertificateError& e) {
            detail += std::string("; certificate rejected: ") + e.what();
        }
    } else {
        try {
            theorem2_certificate(PointSet::from_doubles(pts), alpha, 1, kWorkers);
        } catch (const CertificateError& e) {
            if (e.required_n) detail += "; certificate needs N >= " + std::to_string(*e.required_n);
        }
        detail += "; any 4 points in the plane span an angle >= pi/2, so no such set exceeds 3 points";
    }
    return {ok, detail};
}

Outcome criterion9()
{
    SplitMix64 g(9);
    auto X = th::random_int_set(g, 2049, 12, 1000000);
    auto path = (std::filesystem::temp_directory_path() / "acuteset-acceptance-2049.pts").string();
    write_pointset(X, path);
    Stopwatch sw;
    auto eight = cli({"verify", "--in", path, "--threads", std::to_string(kWorkers)});
    double t8 = sw.seconds();
    Stopwatch sw1;
    auto one = cli({"verify", "--in", path, "--threads", "1"});
    double t1 = sw1.seconds();
    std::filesystem::remove(path);
    bool same = without_elapsed(eight.out) == without_elapsed(one.out);
    bool ok = eight.code == one.code && eight.code != 1 && same && t8 < kVerifySeconds &&
              contains(eight.out, "exact: true");
    return {ok, "8 workers " + secs(t8) + " (limit 300s), 1 worker " + secs(t1) + ", reports " +
                    (same ? "byte-identical" : "DIFFER") + " apart from elapsed"};
}

Outcome criterion10(const std::string& unit_tests)
{
    if (unit_tests.empty()) return {false, "unit test binary not given (--unit-tests PATH)"};
    std::string cmd = "\"" + unit_tests + "\" -ts=properties 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {false, "could not start " + unit_tests};
    std::string out;
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe)) out += buf;
    int status = pclose(pipe);
    std::uint64_t cases = 0;
    auto pos = out.find("property fuzz cases: ");
    if (pos != std::string::npos) cases = std::stoull(out.substr(pos + 21));
    bool ok = status == 0 && cases >= kMinFuzzCases;
    return {ok, std::string("property suite ") + (status == 0 ? "green" : "RED") + ", " + std::to_string(cases) +
                    " fuzz cases (need >= 10000)"};
}

}  // namespace

int main(int argc, char** argv)
{
    std::string unit_tests;
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--unit-tests" && i + 1 < argc) unit_tests = argv[++i];
        else ids.push_back(std::stoi(a));
    }
    if (ids.empty()) ids = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::map<int, std::function<Outcome()>> all{
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
        {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8},
        {9, criterion9}, {10, [&] { return criterion10(unit_tests); }},
    };
    int failed = 0;
    for (int id : ids) {
        auto it = all.find(id);
        if (it == all.end()) {
            std::cerr << "unknown criterion " << id << "\n";
            return 1;
        }
        Outcome o;
        try {
            o = it->second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " " << o.detail << std::endl;
        failed += !o.pass;
    }
    return failed ? 2 : 0;
}
