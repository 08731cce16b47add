#include "acute/verifier.hpp"
#include "acute/parallel.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>

namespace acute {

std::string_view classification_name(Classification c)
{
    switch (c) {
    case Classification::Acute: return "acute";
    case Classification::NonObtuse: return "non-obtuse";
    case Classification::Obtuse: return "obtuse";
    }
    return "?";
}

int compare_cos(const BigInt& dot, const BigInt& n1, const BigInt& n2, const Rational& tau)
{
    int sd = dot.sign(), st = tau.sign();
    if (sd != st) return sd > st ? 1 : -1;
    if (sd == 0) return 0;
    BigInt lhs = dot * dot * denominator(tau) * denominator(tau);
    BigInt rhs = numerator(tau) * numerator(tau) * n1 * n2;
    int q = lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
    return sd * q;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Coordinates prepared for the scan plus an exact fallback.
struct ScanData {
    std::size_t n = 0, d = 0;
    std::vector<double> p;  // row-major
    bool dots_exact = false;
    IntFrame frame;
    ScalarKind kind = ScalarKind::Integer;
};

ScanData prepare(const PointSet& X)
{
    ScanData s;
    s.n = X.size();
    s.d = X.dim();
    s.kind = X.kind();
    s.frame = make_int_frame(X);
    if (s.frame.exact_double) {
        s.p = s.frame.dbl;
        s.dots_exact = true;
    } else if (X.kind() == ScalarKind::Float64) {
        s.p.resize(X.coords().size());
        for (std::size_t k = 0; k < s.p.size(); ++k) s.p[k] = X.coords()[k].as_float();
    } else {
        // approximate image of the integer frame; exactness comes from escalation
        s.p.resize(s.frame.big.size());
        double inv = 1.0;
        BigInt mx = 1;
        for (const auto& v : s.frame.big) mx = std::max(mx, v);
        inv = 1.0 / mx.convert_to<double>();
        for (std::size_t k = 0; k < s.p.size(); ++k) s.p[k] = s.frame.big[k].convert_to<double>() * inv;
    }
    return s;
}

void check_input(const PointSet& X)
{
    if (X.size() < 3) throw ContractError("verification needs at least 3 points");
    if (X.has_duplicates()) throw ContractError("verification input contains duplicate points");
}

// Per-apex working storage: differences in column-major order, inverse norms.
struct ApexWork {
    std::vector<double> dt;  // d x n
    std::vector<double> nrm, inv, row;

    void load(const ScanData& s, std::size_t a)
    {
        std::size_t n = s.n, d = s.d;
        dt.assign(d * n, 0.0);
        nrm.assign(n, 0.0);
        inv.assign(n, 0.0);
        row.assign(n, 0.0);
        for (std::size_t b = 0; b < n; ++b) {
            double acc = 0;
            for (std::size_t t = 0; t < d; ++t) {
                double z = s.p[b * d + t] - s.p[a * d + t];
                dt[t * n + b] = z;
                acc += z * z;
            }
            nrm[b] = acc;
            inv[b] = b == a ? 0.0 : 1.0 / std::sqrt(acc);
        }
    }

    // row[c] = <D_b, D_c> for c in (b, n)
    void dots(const ScanData& s, std::size_t b)
    {
        std::size_t n = s.n, d = s.d;
        double* r = row.data();
        for (std::size_t c = b + 1; c < n; ++c) r[c] = 0.0;
        for (std::size_t t = 0; t < d; ++t) {
            const double* col = dt.data() + t * n;
            const double x = col[b];
            for (std::size_t c = b + 1; c < n; ++c) r[c] += x * col[c];
        }
    }
};

struct Cand {
    bool valid = false;
    std::size_t a = 0, b = 0, c = 0;
    double cos = 0;
    BigInt dot, n1, n2;  // exact frame values, filled lazily
    bool have_exact = false;
};

void fill_exact(const ScanData& s, Cand& k)
{
    if (k.have_exact) return;
    k.dot = s.frame.dot(k.a, k.b, k.c);
    k.n1 = s.frame.dot(k.a, k.b, k.b);
    k.n2 = s.frame.dot(k.a, k.c, k.c);
    k.have_exact = true;
}

// Exact comparison of cosines: negative when x has the smaller cosine.
int compare_exact(const ScanData& s, Cand& x, Cand& y)
{
    fill_exact(s, x);
    fill_exact(s, y);
    int sx = x.dot.sign(), sy = y.dot.sign();
    if (sx != sy) return sx < sy ? -1 : 1;
    if (sx == 0) return 0;
    BigInt l = x.dot * x.dot * y.n1 * y.n2;
    BigInt r = y.dot * y.dot * x.n1 * x.n2;
    int q = l < r ? -1 : (l > r ? 1 : 0);
    return sx * q;
}

bool lex_less(const Cand& x, const Cand& y)
{
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
}

constexpr double kTieTol = 1e-12;

// True when x should replace the current best y.
bool better(const ScanData& s, Cand& x, Cand& y)
{
    if (!y.valid) return true;
    if (x.cos < y.cos - kTieTol) return true;
    if (x.cos > y.cos + kTieTol) return false;
    int c = compare_exact(s, x, y);
    if (c != 0) return c < 0;
    return lex_less(x, y);
}

struct ApexResult {
    Cand best;
    std::uint64_t escalated = 0;
};

ApexResult scan_apex(const ScanData& s, std::size_t a, bool escalate, bool& float_decided)
{
    ApexResult res;
    ApexWork w;
    w.load(s, a);
    std::size_t n = s.n;
    for (std::size_t b = 0; b < n; ++b) {
        if (b == a) continue;
        w.dots(s, b);
        const double ib = w.inv[b];
        double* r = w.row.data();
        double rowmin = std::numeric_limits<double>::infinity();
        for (std::size_t c = b + 1; c < n; ++c) {
            r[c] = r[c] * ib * w.inv[c];
            rowmin = std::min(rowmin, c == a ? rowmin : r[c]);
        }
        if (!s.dots_exact) {
            for (std::size_t c = b + 1; c < n; ++c) {
                if (c == a || std::fabs(r[c]) > kFloatBand) continue;
                if (!escalate) {
                    float_decided = true;
                    continue;
                }
                BigInt dot = s.frame.dot(a, b, c);
                ++res.escalated;
                double approx = dot.convert_to<double>();
                double nb = s.frame.dot(a, b, b).convert_to<double>();
                double nc = s.frame.dot(a, c, c).convert_to<double>();
                r[c] = dot.sign() == 0 ? 0.0 : approx / std::sqrt(nb) / std::sqrt(nc);
                rowmin = std::min(rowmin, r[c]);
            }
        }
        if (res.best.valid && rowmin > res.best.cos + kTieTol) continue;
        for (std::size_t c = b + 1; c < n; ++c) {
            if (c == a) continue;
            if (res.best.valid && r[c] > res.best.cos + kTieTol) continue;
            Cand k;
            k.valid = true;
            k.a = a;
            k.b = b;
            k.c = c;
            k.cos = r[c];
            if (res.best.valid && s.dots_exact && r[c] == 0.0 && res.best.cos == 0.0) continue;  // exact tie at zero, keep earlier
            if (better(s, k, res.best)) res.best = std::move(k);
        }
    }
    return res;
}

Scalar unscale(const BigInt& v, const ScanData& s)
{
    BigInt s2 = s.frame.scale * s.frame.scale;
    switch (s.kind) {
    case ScalarKind::Integer: return Scalar(v);
    case ScalarKind::Rational: return Scalar(Rational(v, s2));
    case ScalarKind::Float64: return Scalar(Rational(v, s2).convert_to<double>());
    }
    return Scalar(v);
}

TripleWitness make_witness(const ScanData& s, Cand& k)
{
    fill_exact(s, k);
    return TripleWitness{k.a, k.b, k.c, unscale(k.dot, s), unscale(k.n1, s), unscale(k.n2, s)};
}

}  // namespace

AngleReport verify(const PointSet& X, const VerifyOptions& opt)
{
    auto t0 = Clock::now();
    check_input(X);
    ScanData s = prepare(X);
    std::size_t n = s.n;
    std::vector<ApexResult> per(n);
    std::vector<char> float_flags(n, 0);
    parallel_chunks(n, opt.threads, [&](std::size_t a) {
        bool fd = false;
        per[a] = scan_apex(s, a, opt.escalate, fd);
        float_flags[a] = fd;
    });
    Cand best;
    AngleReport rep;
    bool float_decided = false;
    for (std::size_t a = 0; a < n; ++a) {
        rep.escalated += per[a].escalated;
        float_decided = float_decided || float_flags[a];
        if (per[a].best.valid && better(s, per[a].best, best)) best = std::move(per[a].best);
    }
    rep.witness = make_witness(s, best);
    // recompute the reported cosine from exact values for stability
    double dot = best.dot.convert_to<double>();
    double cosv = best.dot.sign() == 0 ? 0.0
                                       : dot / std::sqrt(best.n1.convert_to<double>()) /
                                             std::sqrt(best.n2.convert_to<double>());
    rep.min_cos = std::clamp(cosv, -1.0, 1.0);
    int sg = best.dot.sign();
    rep.classification = sg > 0 ? Classification::Acute : (sg == 0 ? Classification::NonObtuse : Classification::Obtuse);
    rep.exact = !float_decided;
    rep.triple_count = static_cast<std::uint64_t>(n) * (n - 1) * (n - 2) / 2;
    rep.elapsed = seconds_since(t0);
    return rep;
}

ThresholdResult verify_threshold(const PointSet& X, const ThresholdQuery& q, const VerifyOptions& opt)
{
    auto t0 = Clock::now();
    check_input(X);
    if (q.tau < -1 || q.tau > 1) throw ContractError("tau must lie in [-1, 1]");
    ScanData s = prepare(X);
    std::size_t n = s.n;
    const double tau_d = q.tau.convert_to<double>();
    std::atomic<std::size_t> first_bad{n};
    struct Viol {
        bool found = false;
        std::size_t b = 0, c = 0;
        double cos = 0;
        bool float_decided = false;
    };
    std::vector<Viol> per(n);
    parallel_chunks(n, opt.threads, [&](std::size_t a) {
        if (a > first_bad.load()) return;
        ApexWork w;
        w.load(s, a);
        Viol& v = per[a];
        for (std::size_t b = 0; b < n && !v.found; ++b) {
            if (b == a) continue;
            if (a > first_bad.load()) return;
            w.dots(s, b);
            for (std::size_t c = b + 1; c < n; ++c) {
                if (c == a) continue;
                double cosv = w.row[c] * w.inv[b] * w.inv[c];
                bool ok;
                if (std::fabs(cosv - tau_d) > kFloatBand) {
                    ok = q.strict ? cosv > tau_d : cosv >= tau_d;
                } else if (opt.escalate) {
                    int cmp = compare_cos(s.frame.dot(a, b, c), s.frame.dot(a, b, b), s.frame.dot(a, c, c), q.tau);
                    ok = q.strict ? cmp > 0 : cmp >= 0;
                } else {
                    v.float_decided = true;
                    ok = q.strict ? cosv > tau_d : cosv >= tau_d;
                }
                if (!ok) {
                    v = {true, b, c, cosv, v.float_decided};
                    std::size_t cur = first_bad.load();
                    while (a < cur && !first_bad.compare_exchange_weak(cur, a)) {
                    }
                    break;
                }
            }
        }
    });
    ThresholdResult res;
    for (std::size_t a = 0; a < n; ++a) {
        if (per[a].float_decided) res.exact = false;
        if (per[a].found) {
            Cand k;
            k.valid = true;
            k.a = a;
            k.b = per[a].b;
            k.c = per[a].c;
            res.pass = false;
            res.witness = make_witness(s, k);
            res.witness_cos = per[a].cos;
            break;
        }
    }
    res.elapsed = seconds_since(t0);
    return res;
}

AngleReport classify_hypercube(std::size_t d, const VerifyOptions& opt)
{
    if (d < 2 || d > 16) throw ContractError("classify_hypercube supports 2 <= d <= 16");
    return verify(hypercube(d), opt);
}

}  // namespace acute
