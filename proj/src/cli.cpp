#include "acute/cli.hpp"
#include "acute/bounds.hpp"
#include "acute/constructions.hpp"
#include "acute/pointset_io.hpp"
#include "acute/ramsey_cover.hpp"
#include "acute/report.hpp"
#include "acute/volume_cert.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ostream>

namespace acute {

namespace {

struct RunConfig {
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string format = "report";
    std::string in, out;
    std::string tau, alpha, c;
    bool strict = false;
    bool partial = false;
    double epsilon = 0.5;
    double lambda = 4;
    std::size_t n = 0, dim = 0;
    std::size_t from = 0, to = 0;
    std::size_t max_vectors = 0;
    std::size_t max_retries = 0;
    std::string base = "triangle";
    std::string height_bound = "1/4";
};

void put_witness(Report& r, const TripleWitness& w)
{
    r.set("apex", w.apex).set("leg1", w.leg1).set("leg2", w.leg2);
    r.set("scalar_product", w.scalar_product.str()).set("norm1", w.norm1.str()).set("norm2", w.norm2.str());
    double c = w.scalar_product.to_double() / std::sqrt(w.norm1.to_double() * w.norm2.to_double());
    r.set("cos", c);
}

void put_pointset(Report& r, const PointSet& X)
{
    r.set("points", X.size()).set("dim", X.dim()).set("scalar", std::string(kind_name(X.kind())));
}

void put_angle_report(Report& r, const AngleReport& a)
{
    r.set("classification", std::string(classification_name(a.classification)));
    r.set("min_cos", a.min_cos);
    r.set("max_angle", std::acos(std::clamp(a.min_cos, -1.0, 1.0)));
    r.set("exact", a.exact);
    r.set("triples", a.triple_count);
    r.set("escalated", a.escalated);
    put_witness(r.section("witness"), a.witness);
}

void put_threshold(Report& r, const ThresholdQuery& q, const ThresholdResult& t)
{
    r.set("tau", format_rational(q.tau)).set("strict", q.strict).set("pass", t.pass).set("exact", t.exact);
    if (t.witness) put_witness(r.section("witness"), *t.witness);
}

void put_stats(Report& r, const ConstructionStats& st)
{
    auto& p = r.section("requested");
    for (const auto& [k, v] : st.requested_params) p.set(k, v);
    r.set("seed", st.seed).set("sampled", st.sampled).set("bad_triples_found", st.bad_triples_found);
    r.set("deleted", st.deleted).set("final_size", st.final_size).set("attempts", st.attempts);
    if (st.guarantee)
        r.section("guarantee").set("tau", format_rational(st.guarantee->tau)).set("strict", st.guarantee->strict);
    if (!st.extra.empty()) {
        auto& e = r.section("diagnostics");
        for (const auto& [k, v] : st.extra) e.set(k, v);
    }
}

void put_volume(Report& r, const HullVolume& v)
{
    r.set("exact", v.exact).set("degenerate", v.degenerate);
    if (v.exact) r.set("value", format_rational(v.value));
    r.set("estimate", v.estimate);
    if (!v.exact) r.set("ci_low", v.ci_low).set("ci_high", v.ci_high).set("samples", v.samples);
}

void put_chain(Report& r, const ChainResult& ch)
{
    r.set("c", format_rational(ch.c)).set("step_lower", ch.step_lower).set("step_upper", ch.step_upper);
    std::string sizes;
    for (std::size_t i = 0; i < ch.chain_sizes.size(); ++i) sizes += (i ? " " : "") + std::to_string(ch.chain_sizes[i]);
    r.set("chain_sizes", sizes);
    r.set("index_found", ch.index_found).set("size_A", ch.A.size()).set("size_B", ch.B.size());
    r.set("added", ch.B.size() - ch.A.size());
    put_volume(r.section("vol_A"), ch.vol_A);
    put_volume(r.section("vol_B"), ch.vol_B);
    r.set("status", ch.exact ? "exact" : "statistical");
}

void require(bool ok, const std::string& msg)
{
    if (!ok) throw ContractError(msg);
}

BaseSetCatalogEntry base_by_name(const std::string& name)
{
    if (name == "triangle") return catalog_small(2);
    if (name == "five-point") return catalog_small(3);
    throw ContractError("unknown base '" + name + "' (expected triangle or five-point)");
}

// Re-verifies a construction; returns true when the output meets its guarantee.
bool reverify(Report& r, const PointSet& X, const ConstructionStats& st, unsigned threads)
{
    VerifyOptions vo;
    vo.threads = threads;
    auto& v = r.section("verification");
    if (X.size() < 3) {
        // no triples: every angle condition holds vacuously
        v.set("triples", 0);
        return true;
    }
    if (st.guarantee) {
        auto t = verify_threshold(X, *st.guarantee, vo);
        put_threshold(v, *st.guarantee, t);
        return t.pass;
    }
    auto a = verify(X, vo);
    put_angle_report(v, a);
    return a.classification == Classification::Acute;
}

int cmd_construct(const std::string& which, const RunConfig& cfg, Report& rep)
{
    std::pair<PointSet, ConstructionStats> res;
    bool angle_bound = false;
    if (which == "erdos-furedi") {
        require(cfg.dim > 0, "--dim is required");
        res = build_erdos_furedi(cfg.dim, cfg.seed, 2, cfg.threads);
    } else if (which == "theorem1") {
        require(cfg.n > 0, "--n is required");
        res = build_product_theorem1(base_by_name(cfg.base), cfg.n, cfg.epsilon, cfg.seed, cfg.threads);
    } else if (which == "lacunary") {
        require(cfg.dim > 0, "--dim is required");
        res = build_lacunary_prop1(cfg.dim, cfg.n, cfg.epsilon, cfg.lambda, cfg.seed);
        angle_bound = true;
    } else {
        require(cfg.dim > 0, "--dim is required");
        // one attempt costs ~0.1 s at d = 5 and ~2 s at d = 6
        std::size_t retries = cfg.max_retries ? cfg.max_retries : (cfg.dim <= 5 ? 300 : 24);
        res = build_perturbed_hypercube(cfg.dim, cfg.seed, parse_exact_decimal(cfg.height_bound), retries,
                                        cfg.threads);
    }
    auto& [X, st] = res;
    put_stats(rep.section("construction"), st);
    put_pointset(rep.section("output"), X);
    bool ok;
    if (angle_bound && X.size() >= 3) {
        VerifyOptions vo;
        vo.threads = cfg.threads;
        auto a = verify(X, vo);
        auto& v = rep.section("verification");
        put_angle_report(v, a);
        double bound = 0;
        for (const auto& [k, val] : st.extra)
            if (k == "max_angle_bound") bound = parse_double(val);
        ok = std::acos(std::clamp(a.min_cos, -1.0, 1.0)) < bound;
        v.set("max_angle_bound", bound).set("within_bound", ok);
    } else {
        ok = reverify(rep, X, st, cfg.threads);
    }
    if (!cfg.out.empty() && ok) write_pointset(X, cfg.out);
    rep.set("status", ok ? "verified" : "verification-failed");
    return ok ? kExitOk : kExitVerification;
}

int cmd_verify(const RunConfig& cfg, Report& rep)
{
    require(!cfg.in.empty(), "--in is required");
    auto X = read_pointset(cfg.in);
    put_pointset(rep.section("input"), X);
    VerifyOptions vo;
    vo.threads = cfg.threads;
    if (X.size() >= 3) put_angle_report(rep.section("result"), verify(X, vo));
    if (cfg.tau.empty()) return kExitOk;
    ThresholdQuery q{parse_exact_decimal(cfg.tau), cfg.strict};
    auto t = verify_threshold(X, q, vo);
    put_threshold(rep.section("threshold"), q, t);
    return t.pass ? kExitOk : kExitVerification;
}

CapCover make_cover(const RunConfig& cfg, std::size_t dim, Report& rep)
{
    require(!cfg.alpha.empty(), "--alpha is required");
    CoverOptions co;
    if (cfg.max_vectors) co.max_vectors = cfg.max_vectors;
    auto cv = greedy_cap_cover(dim, parse_angle(cfg.alpha), cfg.seed, co);
    auto& r = rep.section("cover");
    r.set("dim", cv.dim).set("alpha", cv.alpha).set("half_angle", cv.half_angle).set("margin", cv.margin);
    r.set("size", cv.vectors.size()).set("complete", cv.complete).set("largest_gap", cv.largest_gap);
    r.set("probes", cv.probes);
    auto& vs = r.section("vectors");
    for (std::size_t i = 0; i < cv.vectors.size(); ++i) {
        std::string s;
        for (std::size_t j = 0; j < cv.vectors[i].size(); ++j) s += (j ? " " : "") + format_double(cv.vectors[i][j]);
        vs.set("v" + std::to_string(i + 1), s);
    }
    return cv;
}

int cmd_witness(const RunConfig& cfg, Report& rep)
{
    require(!cfg.in.empty(), "--in is required");
    auto X = read_pointset(cfg.in);
    put_pointset(rep.section("input"), X);
    auto cv = make_cover(cfg, X.dim(), rep);
    auto res = extract_obtuse_witness(X, cv.alpha, cv, cfg.partial || !cv.complete);
    auto& r = rep.section("witness");
    r.set("colored_pairs", res.colored_pairs).set("total_pairs", res.total_pairs);
    if (!res.witness) {
        r.set("found", false);
        return kExitVerification;
    }
    r.set("found", true).set("color", res.path->color).set("angle", res.angle);
    put_witness(r.section("triple"), *res.witness);
    return kExitOk;
}

int cmd_lemma1(const RunConfig& cfg, Report& rep)
{
    require(!cfg.in.empty(), "--in is required");
    require(!cfg.c.empty(), "--c is required");
    auto X = read_pointset(cfg.in);
    put_pointset(rep.section("input"), X);
    VolumeOptions vo;
    vo.seed = cfg.seed;
    vo.threads = cfg.threads;
    auto ch = lemma1_chain(X, parse_exact_decimal(cfg.c), cfg.seed, vo);
    put_chain(rep.section("chain"), ch);
    return kExitOk;
}

int cmd_theorem2(const RunConfig& cfg, Report& rep)
{
    require(!cfg.in.empty(), "--in is required");
    require(!cfg.alpha.empty(), "--alpha is required");
    auto X = read_pointset(cfg.in);
    put_pointset(rep.section("input"), X);
    const double alpha = parse_angle(cfg.alpha);
    Theorem2Certificate cert;
    try {
        cert = theorem2_certificate(X, alpha, cfg.seed, cfg.threads);
    } catch (const CertificateError& e) {
        auto& r = rep.section("certificate");
        r.set("error", e.what());
        if (e.required_n) {
            r.set("required_n", *e.required_n);
            return kExitContract;
        }
        if (e.witness) put_witness(r.section("witness"), *e.witness);
        return kExitVerification;
    }
    auto& r = rep.section("certificate");
    r.set("alpha", cert.alpha).set("epsilon", format_rational(cert.epsilon)).set("lambda", format_rational(cert.lambda));
    put_chain(r.section("chain"), cert.chain);
    r.set("pairs_checked", cert.pairs_checked).set("disjointness_checked", cert.disjointness_checked);
    r.set("volume_lower_ok", cert.volume_lower_ok).set("volume_upper_ok", cert.volume_upper_ok);
    r.set("bound", cert.bound.str()).set("points", cert.n_points).set("holds", cert.holds);
    bool ok = cert.disjointness_checked && cert.volume_lower_ok && cert.volume_upper_ok && cert.holds;
    return ok ? kExitOk : kExitVerification;
}

void put_bounds_row(Report& r, const BoundsRow& row)
{
    r.set("quantity", row.quantity).set("lower", row.lower.str()).set("upper", row.upper.str());
    r.set("status", std::string(bound_status_name(row.status))).set("source", row.source);
    for (std::size_t i = 0; i < row.notes.size(); ++i) r.set("note" + std::to_string(i + 1), row.notes[i]);
}

int cmd_bounds(const RunConfig& cfg, Report& rep, std::string& csv)
{
    std::vector<BoundsRow> rows;
    if (!cfg.alpha.empty()) {
        rows.push_back(bounds_F_alpha(parse_angle(cfg.alpha)));
    } else if (cfg.dim) {
        rows.push_back(bounds_f(cfg.dim));
    } else {
        require(cfg.from && cfg.to, "bounds needs --from/--to, --dim or --alpha");
        rows = bounds_table(cfg.from, cfg.to);
    }
    auto& t = rep.section("bounds");
    csv = "quantity,lower,upper,status,source\n";
    for (const auto& row : rows) {
        put_bounds_row(t.section("row"), row);
        csv += row.quantity + "," + row.lower.str() + "," + row.upper.str() + "," +
               std::string(bound_status_name(row.status)) + ",\"" + row.source + "\"\n";
    }
    return kExitOk;
}

int cmd_catalog(const RunConfig& cfg, Report& rep)
{
    require(cfg.dim > 0, "--dim is required");
    auto e = catalog_small(cfg.dim);
    auto& r = rep.section("catalog");
    r.set("dim", e.dim).set("points", e.points.size()).set("s", e.s.str()).set("R_sq", e.R_sq.str());
    r.set("provenance", e.provenance);
    auto a = verify(e.points);
    put_angle_report(rep.section("verification"), a);
    bool ok = a.classification == Classification::Acute && a.exact;
    if (!cfg.out.empty()) write_pointset(e.points, cfg.out);
    return ok ? kExitOk : kExitVerification;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg;
    CLI::App app{"Acute point sets: constructions, verification and certificates", "acuteset"};
    app.require_subcommand(1);
    app.add_option("--seed", cfg.seed, "64-bit seed (default 0)");
    app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--format", cfg.format, "report or csv")->check(CLI::IsMember({"report", "csv"}));

    auto* verify_cmd = app.add_subcommand("verify", "classify a point set, optionally against a cosine threshold");
    verify_cmd->add_option("--in", cfg.in)->required();
    verify_cmd->add_option("--tau", cfg.tau, "cosine threshold (decimal or p/q)");
    verify_cmd->add_flag("--strict", cfg.strict, "require cos > tau instead of cos >= tau");

    auto* construct = app.add_subcommand("construct", "build a point set");
    construct->require_subcommand(1);
    auto* ef = construct->add_subcommand("erdos-furedi", "random 0/1 vectors with deletion");
    ef->add_option("--dim", cfg.dim)->required();
    auto* t1 = construct->add_subcommand("theorem1", "product construction over a base set");
    t1->add_option("--base", cfg.base, "triangle or five-point");
    t1->add_option("--n", cfg.n)->required();
    t1->add_option("--epsilon", cfg.epsilon);
    auto* lac = construct->add_subcommand("lacunary", "lacunary sums of near-orthogonal vectors");
    lac->add_option("--dim", cfg.dim)->required();
    lac->add_option("--n", cfg.n, "number of vectors m")->required();
    lac->add_option("--epsilon", cfg.epsilon);
    lac->add_option("--lambda", cfg.lambda);
    auto* ph = construct->add_subcommand("perturbed-hypercube", "2^{d-1}+1 points by perturbation search");
    ph->add_option("--dim", cfg.dim)->required();
    ph->add_option("--height-bound", cfg.height_bound);
    ph->add_option("--max-retries", cfg.max_retries, "restarts before giving up (default 300 for d <= 5, else 24)");
    for (auto* s : {ef, t1, lac, ph}) s->add_option("--out", cfg.out);

    auto* cover = app.add_subcommand("cover", "greedy spherical cap cover");
    cover->add_option("--dim", cfg.dim)->required();
    cover->add_option("--alpha", cfg.alpha)->required();
    cover->add_option("--max-vectors", cfg.max_vectors);

    auto* wit = app.add_subcommand("witness-obtuse", "find an angle >= alpha via a monochromatic 2-path");
    wit->add_option("--in", cfg.in)->required();
    wit->add_option("--alpha", cfg.alpha)->required();
    wit->add_option("--max-vectors", cfg.max_vectors);
    wit->add_flag("--partial", cfg.partial, "leave uncovered pairs uncolored");

    auto* l1 = app.add_subcommand("lemma1", "volume chain");
    l1->add_option("--in", cfg.in)->required();
    l1->add_option("--c", cfg.c)->required();

    auto* t2 = app.add_subcommand("theorem2-cert", "homothet packing certificate");
    t2->add_option("--in", cfg.in)->required();
    t2->add_option("--alpha", cfg.alpha)->required();

    auto* bnd = app.add_subcommand("bounds", "bounds on f(d) and F(alpha)");
    bnd->add_option("--from", cfg.from);
    bnd->add_option("--to", cfg.to);
    bnd->add_option("--dim", cfg.dim);
    bnd->add_option("--alpha", cfg.alpha);

    auto* cat = app.add_subcommand("catalog", "small exact acute base sets");
    cat->add_option("--dim", cfg.dim)->required();
    cat->add_option("--out", cfg.out);

    for (auto* s : {verify_cmd, construct, ef, t1, lac, ph, cover, wit, l1, t2, bnd, cat}) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitContract;
    }

    Report rep;
    std::string bounds_csv;
    int code = kExitOk;
    try {
        if (*verify_cmd) {
            rep.set("command", "verify");
            code = cmd_verify(cfg, rep);
        } else if (*construct) {
            std::string which = ef->parsed() ? "erdos-furedi" : t1->parsed() ? "theorem1" : lac->parsed() ? "lacunary"
                                                                                                          : "perturbed-hypercube";
            rep.set("command", "construct " + which);
            code = cmd_construct(which, cfg, rep);
        } else if (*cover) {
            rep.set("command", "cover");
            make_cover(cfg, cfg.dim, rep);
        } else if (*wit) {
            rep.set("command", "witness-obtuse");
            code = cmd_witness(cfg, rep);
        } else if (*l1) {
            rep.set("command", "lemma1");
            code = cmd_lemma1(cfg, rep);
        } else if (*t2) {
            rep.set("command", "theorem2-cert");
            code = cmd_theorem2(cfg, rep);
        } else if (*bnd) {
            rep.set("command", "bounds");
            code = cmd_bounds(cfg, rep, bounds_csv);
        } else if (*cat) {
            rep.set("command", "catalog");
            code = cmd_catalog(cfg, rep);
        }
    } catch (const ConstructionError& e) {
        put_stats(rep.section("construction"), e.stats);
        rep.set("status", "failed");
        rep.set("error", e.what());
        code = kExitVerification;
    } catch (const ContractError& e) {
        err << "error: " << e.what() << "\n";
        return kExitContract;
    }
    rep.set("seed", cfg.seed);
    rep.set("exit_code", code);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.set("elapsed", elapsed);
    if (cfg.format == "csv") out << (bounds_csv.empty() ? rep.render_csv() : bounds_csv);
    else out << rep.render_text();
    return code;
}

}  // namespace acute
