#pragma once

#include "acute/hull.hpp"
#include "acute/verifier.hpp"

#include <optional>
#include <vector>

namespace acute {

// Greedy maximal simplex: diameter pair first, then the point maximizing the
// simplex volume. Asserts Vol(base) >= N^{-d-1} Vol(X) when volumes are exact.
std::vector<std::size_t> caratheodory_base(const PointSet& X);

struct ChainResult {
    Rational c = 1;
    std::size_t step_lower = 0;      // ceil(cN / (3 d log2 N))
    double step_upper = 0;           // cN / (2 d log2 N)
    std::vector<std::size_t> chain_sizes;
    std::size_t index_found = 0;     // A = X_i, B = X_{i+1}
    std::vector<std::size_t> A, B;   // sorted indices
    HullVolume vol_A, vol_B;
    bool exact = true;               // false: Monte Carlo volumes, statistical only
};

// Smallest c admitted for N points in R^d: 12 d log2 N / N.
double lemma1_min_c(std::size_t n, std::size_t d);
ChainResult lemma1_chain(const PointSet& X, const Rational& c, std::uint64_t seed, const VolumeOptions& vopt = {});

// Rational upper bound on sin(alpha), within 1e-12.
Rational sin_upper(double alpha);
// 1 / (2 (1 - 1.5 eps^2)) with eps = sin_upper(alpha); 0 < alpha < 0.4.
Rational homothety_lambda(double alpha);

// Strict separation of (1-lambda) x + lambda conv(A) and (1-lambda) z + lambda conv(A)
// by the hyperplane <. - x, z - x> = |z - x|^2 / 2, decided exactly.
bool check_homothet_disjoint(const PointSet& X, const std::vector<std::size_t>& A, std::size_t x, std::size_t z,
                             const Rational& lambda);

struct Theorem2Certificate {
    double alpha = 0;
    Rational epsilon;  // upper bound on sin(alpha)
    Rational lambda;
    ChainResult chain;
    std::uint64_t pairs_checked = 0;
    bool disjointness_checked = false;  // every pair of B \ A passed
    bool volume_lower_ok = false;       // |B\A| lambda^d vol_A <= vol_B
    bool volume_upper_ok = false;       // vol_B <= 2 vol_A
    BigInt bound = 0;                   // floor(8 d^2 lambda^{-d})
    std::size_t n_points = 0;
    bool holds = false;                 // n_points <= bound
};

// Precondition failures carry the violating triple or the required N.
class CertificateError : public ContractError {
public:
    explicit CertificateError(const std::string& what) : ContractError(what) {}
    std::optional<TripleWitness> witness;
    std::optional<std::size_t> required_n;
};

Theorem2Certificate theorem2_certificate(const PointSet& X, double alpha, std::uint64_t seed,
                                         unsigned threads = 1);

}  // namespace acute
