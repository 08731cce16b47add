#include "acute/pointset.hpp"
#include "acute/parallel.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>

namespace acute {

PointSet::PointSet(std::size_t dim, std::vector<Scalar> coords, ScalarKind kind, bool raw)
    : dim_(dim), coords_(std::move(coords)), kind_(kind), raw_(raw)
{
    if (dim_ == 0) throw ContractError("dimension must be positive");
    if (coords_.size() % dim_ != 0) throw ContractError("coordinate count is not a multiple of the dimension");
    for (const auto& c : coords_)
        if (c.kind() != kind_) throw ContractError("point coordinates must share the set's scalar kind");
    if (!raw_ && has_duplicates()) throw ContractError("duplicate point in a non-raw point set");
}

PointSet PointSet::from_integers(const std::vector<std::vector<long long>>& rows, bool raw)
{
    if (rows.empty()) throw ContractError("empty point list");
    std::vector<Scalar> c;
    for (const auto& r : rows) {
        if (r.size() != rows[0].size()) throw ContractError("ragged point list");
        for (long long v : r) c.push_back(Scalar::integer(v));
    }
    return PointSet(rows[0].size(), std::move(c), ScalarKind::Integer, raw);
}

PointSet PointSet::from_rationals(const std::vector<std::vector<Rational>>& rows, bool raw)
{
    if (rows.empty()) throw ContractError("empty point list");
    std::vector<Scalar> c;
    for (const auto& r : rows) {
        if (r.size() != rows[0].size()) throw ContractError("ragged point list");
        for (const auto& v : r) c.emplace_back(v);
    }
    return PointSet(rows[0].size(), std::move(c), ScalarKind::Rational, raw);
}

PointSet PointSet::from_doubles(const std::vector<std::vector<double>>& rows, bool raw)
{
    if (rows.empty()) throw ContractError("empty point list");
    std::vector<Scalar> c;
    for (const auto& r : rows) {
        if (r.size() != rows[0].size()) throw ContractError("ragged point list");
        for (double v : r) c.emplace_back(v);
    }
    return PointSet(rows[0].size(), std::move(c), ScalarKind::Float64, raw);
}

namespace {

// Total order on coordinates of one kind. Floats compare by bit pattern after
// folding -0.0 into 0.0 (inputs are finite, so this is numeric equality).
int cmp_scalar(const Scalar& a, const Scalar& b)
{
    if (a.kind() == ScalarKind::Float64) {
        double x = a.as_float(), y = b.as_float();
        if (x == 0) x = 0.0;
        if (y == 0) y = 0.0;
        std::uint64_t bx, by;
        std::memcpy(&bx, &x, 8);
        std::memcpy(&by, &y, 8);
        return (bx > by) - (bx < by);
    }
    if (a == b) return 0;
    return a < b ? -1 : 1;
}

}  // namespace

bool PointSet::has_duplicates() const
{
    std::size_t n = size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    auto row_cmp = [&](std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < dim_; ++j) {
            int c = cmp_scalar(at(a, j), at(b, j));
            if (c != 0) return c;
        }
        return 0;
    };
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return row_cmp(a, b) < 0; });
    for (std::size_t k = 1; k < n; ++k)
        if (row_cmp(idx[k - 1], idx[k]) == 0) return true;
    return false;
}

PointSet PointSet::subset(const std::vector<std::size_t>& idx) const
{
    std::vector<Scalar> c;
    c.reserve(idx.size() * dim_);
    for (auto i : idx) {
        if (i >= size()) throw ContractError("subset index out of range");
        for (std::size_t j = 0; j < dim_; ++j) c.push_back(at(i, j));
    }
    return PointSet(dim_, std::move(c), kind_, raw_);
}

PointSet PointSet::with_raw(bool raw) const { return PointSet(dim_, coords_, kind_, raw); }

bool PointSet::operator==(const PointSet& o) const
{
    return dim_ == o.dim_ && kind_ == o.kind_ && raw_ == o.raw_ && coords_ == o.coords_;
}

std::vector<Rational> exact_coords(const PointSet& X)
{
    std::vector<Rational> r;
    r.reserve(X.coords().size());
    for (const auto& c : X.coords()) r.push_back(c.to_rational());
    return r;
}

IntFrame make_int_frame(const PointSet& X)
{
    IntFrame f;
    f.n = X.size();
    f.d = X.dim();
    auto q = exact_coords(X);
    BigInt L = 1;
    for (const auto& r : q) {
        const BigInt& den = denominator(r);
        if (den != 1) L = boost::multiprecision::lcm(L, den);
    }
    f.scale = L;
    f.big.resize(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) f.big[k] = numerator(q[k]) * (L / denominator(q[k]));
    BigInt span = 0;
    for (std::size_t j = 0; j < f.d; ++j) {
        BigInt lo = f.big[j], hi = f.big[j];
        for (std::size_t i = 1; i < f.n; ++i) {
            lo = std::min(lo, f.big[i * f.d + j]);
            hi = std::max(hi, f.big[i * f.d + j]);
        }
        for (std::size_t i = 0; i < f.n; ++i) f.big[i * f.d + j] -= lo;
        span = std::max(span, BigInt(hi - lo));
    }
    f.exact_double = BigInt(f.d) * span * span < (BigInt(1) << 53);
    if (f.exact_double) {
        f.dbl.resize(f.big.size());
        for (std::size_t k = 0; k < f.big.size(); ++k) f.dbl[k] = f.big[k].convert_to<double>();
    }
    return f;
}

BigInt IntFrame::dot(std::size_t apex, std::size_t a, std::size_t b) const
{
    BigInt s = 0;
    for (std::size_t j = 0; j < d; ++j)
        s += (big[a * d + j] - big[apex * d + j]) * (big[b * d + j] - big[apex * d + j]);
    return s;
}

namespace {

void check_triple(const PointSet& X, std::size_t apex, std::size_t l1, std::size_t l2)
{
    std::size_t n = X.size();
    if (apex >= n || l1 >= n || l2 >= n) throw ContractError("point index out of range");
    if (apex == l1 || apex == l2) throw ContractError("apex must differ from both legs");
}

Scalar from_scaled(const BigInt& v, const BigInt& scale2, ScalarKind kind)
{
    switch (kind) {
    case ScalarKind::Integer: return Scalar(v);
    case ScalarKind::Rational: return Scalar(Rational(v, scale2));
    case ScalarKind::Float64: return Scalar(Rational(v, scale2).convert_to<double>());
    }
    return Scalar(v);
}

}  // namespace

Scalar scalar_product_at(const PointSet& X, std::size_t apex, std::size_t leg1, std::size_t leg2)
{
    check_triple(X, apex, leg1, leg2);
    std::size_t d = X.dim();
    if (X.kind() == ScalarKind::Integer) {
        BigInt s = 0;
        for (std::size_t j = 0; j < d; ++j) {
            const BigInt& a = X.at(apex, j).as_integer();
            s += (X.at(leg1, j).as_integer() - a) * (X.at(leg2, j).as_integer() - a);
        }
        return Scalar(s);
    }
    Rational s = 0;
    for (std::size_t j = 0; j < d; ++j) {
        Rational a = X.at(apex, j).to_rational();
        s += (X.at(leg1, j).to_rational() - a) * (X.at(leg2, j).to_rational() - a);
    }
    if (X.kind() == ScalarKind::Rational) return Scalar(s);
    return Scalar(s.convert_to<double>());
}

namespace {

struct MinCand {
    bool valid = false;
    std::size_t a = 0, b = 0, c = 0;
};

// Gram matrix of frame coordinates; exact in int64 when 4*d*span^2 < 2^62.
bool gram_fits_i64(const IntFrame& f)
{
    BigInt span = 0;
    for (const auto& v : f.big) span = std::max(span, v);
    return BigInt(4) * BigInt(f.d) * span * span < (BigInt(1) << 62);
}

template <class T>
std::vector<T> gram_matrix(const IntFrame& f, unsigned threads)
{
    std::size_t n = f.n, d = f.d;
    std::vector<T> g(n * n);
    std::vector<T> v(f.big.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<T>(f.big[k]);
    parallel_chunks(n, threads, [&](std::size_t i) {
        for (std::size_t j = i; j < n; ++j) {
            T s = 0;
            for (std::size_t t = 0; t < d; ++t) s += v[i * d + t] * v[j * d + t];
            g[i * n + j] = s;
            g[j * n + i] = s;
        }
    });
    return g;
}

template <class T>
std::pair<T, MinCand> min_from_gram(const std::vector<T>& g, std::size_t n, bool degenerate, unsigned threads)
{
    std::vector<std::pair<T, MinCand>> per(n);
    parallel_chunks(n, threads, [&](std::size_t a) {
        T best = 0;
        MinCand mc;
        const T gaa = g[a * n + a];
        for (std::size_t b = 0; b < n; ++b) {
            if (b == a) continue;
            const T gab = g[a * n + b];
            for (std::size_t c = degenerate ? b : b + 1; c < n; ++c) {
                if (c == a) continue;
                T s = gaa - gab - g[a * n + c] + g[b * n + c];
                if (!mc.valid || s < best) {
                    best = s;
                    mc = {true, a, b, c};
                }
            }
        }
        per[a] = {best, mc};
    });
    std::pair<T, MinCand> out{0, {}};
    for (auto& p : per)
        if (p.second.valid && (!out.second.valid || p.first < out.first)) out = p;
    return out;
}

}  // namespace

std::pair<Scalar, TripleWitness> min_scalar_product(const PointSet& X, const MinScalarOptions& opt)
{
    std::size_t n = X.size();
    if (n < 3) throw ContractError("min_scalar_product needs at least 3 points");
    if (X.has_duplicates()) throw ContractError("min_scalar_product needs a duplicate-free set");
    MinCand best;
    Scalar value;
    if (X.kind() == ScalarKind::Float64) {
        std::size_t d = X.dim();
        std::vector<double> p(X.coords().size());
        for (std::size_t k = 0; k < p.size(); ++k) p[k] = X.coords()[k].as_float();
        double bv = 0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (b == a) continue;
                for (std::size_t c = opt.include_degenerate_legs ? b : b + 1; c < n; ++c) {
                    if (c == a) continue;
                    double s = 0;
                    for (std::size_t t = 0; t < d; ++t) s += (p[b * d + t] - p[a * d + t]) * (p[c * d + t] - p[a * d + t]);
                    if (!best.valid || s < bv) {
                        bv = s;
                        best = {true, a, b, c};
                    }
                }
            }
        value = scalar_product_at(X, best.a, best.b, best.c);
    } else {
        IntFrame f = make_int_frame(X);
        BigInt scale2 = f.scale * f.scale;
        if (gram_fits_i64(f)) {
            auto g = gram_matrix<long long>(f, opt.threads);
            auto r = min_from_gram(g, n, opt.include_degenerate_legs, opt.threads);
            best = r.second;
            value = from_scaled(BigInt(r.first), scale2, X.kind());
        } else {
            auto g = gram_matrix<BigInt>(f, opt.threads);
            auto r = min_from_gram(g, n, opt.include_degenerate_legs, opt.threads);
            best = r.second;
            value = from_scaled(r.first, scale2, X.kind());
        }
    }
    TripleWitness w{best.a, best.b, best.c, value, scalar_product_at(X, best.a, best.b, best.b),
                    scalar_product_at(X, best.a, best.c, best.c)};
    return {value, w};
}

DiameterResult squared_diameter(const PointSet& X)
{
    std::size_t n = X.size();
    if (n < 2) throw ContractError("squared_diameter needs at least 2 points");
    DiameterResult r;
    if (X.kind() == ScalarKind::Float64) {
        std::size_t d = X.dim();
        double best = -1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double s = 0;
                for (std::size_t t = 0; t < d; ++t) {
                    double z = X.at(i, t).as_float() - X.at(j, t).as_float();
                    s += z * z;
                }
                if (s > best) {
                    best = s;
                    r.i = i;
                    r.j = j;
                }
            }
        r.value = scalar_product_at(X, r.i, r.j, r.j);
        return r;
    }
    IntFrame f = make_int_frame(X);
    BigInt best = -1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            BigInt s = f.dot(i, j, j);
            if (s > best) {
                best = s;
                r.i = i;
                r.j = j;
            }
        }
    r.value = from_scaled(best, f.scale * f.scale, X.kind());
    return r;
}

PointSet hypercube(std::size_t d)
{
    if (d == 0 || d > 30) throw ContractError("hypercube dimension out of range");
    std::vector<Scalar> c;
    std::size_t n = std::size_t(1) << d;
    c.reserve(n * d);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t j = 0; j < d; ++j) c.push_back(Scalar::integer(static_cast<long long>((v >> j) & 1)));
    return PointSet(d, std::move(c), ScalarKind::Integer);
}

}  // namespace acute
