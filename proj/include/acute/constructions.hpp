#pragma once

#include "acute/pointset.hpp"
#include "acute/verifier.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace acute {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct ConstructionStats {
    KeyValues requested_params;
    std::uint64_t seed = 0;
    std::uint64_t sampled = 0;
    std::uint64_t bad_triples_found = 0;
    std::uint64_t deleted = 0;
    std::uint64_t final_size = 0;
    std::optional<ThresholdQuery> guarantee;
    std::uint64_t attempts = 1;
    KeyValues extra;  // construction-specific diagnostics
};

// Thrown when a randomized construction gives up; carries the last attempt's stats.
class ConstructionError : public ContractError {
public:
    ConstructionError(const std::string& what, ConstructionStats s) : ContractError(what), stats(std::move(s)) {}
    ConstructionStats stats;
};

struct BaseSetCatalogEntry {
    std::size_t dim = 0;
    PointSet points;
    Scalar s;
    Scalar R_sq;
    std::string provenance;
};

using Triple = std::array<std::uint32_t, 3>;  // apex, leg1 < leg2

// Removes the point in the most live triples (ties: lowest index) until none is left.
// Returns the surviving indices in increasing order.
std::vector<std::size_t> greedy_delete(std::size_t n, const std::vector<Triple>& bad);

// floor(1/2 * (2/sqrt 3)^d), computed exactly.
BigInt erdos_furedi_target(std::size_t d);

std::pair<PointSet, ConstructionStats> build_erdos_furedi(std::size_t d, std::uint64_t seed,
                                                          std::size_t oversample_factor = 2, unsigned threads = 1);

// Sample of X0^n: row r holds the base indices of point r, one per block.
struct ProductSample {
    std::size_t n = 0;
    std::vector<std::uint32_t> idx;  // count * n
    std::size_t count() const { return n == 0 ? 0 : idx.size() / n; }
};

ProductSample sample_product_points(std::size_t base_size, std::size_t n, std::size_t count, std::uint64_t seed);
PointSet product_points(const BaseSetCatalogEntry& base, const ProductSample& sample, const std::vector<std::size_t>& keep);
std::uint64_t theorem1_m(std::size_t n, std::size_t d0, double epsilon);
// Ordered triples (apex; leg1 < leg2) with scalar product <= (eps/2) n s. The
// agreement-count prefilter only skips triples that cannot qualify.
std::vector<Triple> theorem1_bad_triples(const BaseSetCatalogEntry& base, const ProductSample& sample,
                                         double epsilon, bool use_prefilter, unsigned threads = 1);

std::pair<PointSet, ConstructionStats> build_product_theorem1(const BaseSetCatalogEntry& base, std::size_t n,
                                                              double epsilon, std::uint64_t seed,
                                                              unsigned threads = 1);

std::vector<std::vector<double>> sample_near_orthogonal(std::size_t d, std::size_t m, double epsilon,
                                                        std::uint64_t seed, std::size_t max_retries = 200000);
PointSet lacunary_from_vectors(const std::vector<std::vector<double>>& v, std::size_t d, double lambda);
std::pair<PointSet, ConstructionStats> build_lacunary_prop1(std::size_t d, std::size_t m, double epsilon,
                                                            double lambda, std::uint64_t seed);

std::pair<PointSet, ConstructionStats> build_perturbed_hypercube(std::size_t d, std::uint64_t seed,
                                                                 const Rational& height_bound = Rational(1, 4),
                                                                 std::size_t max_retries = 12,
                                                                 unsigned threads = 1);

BaseSetCatalogEntry catalog_small(std::size_t d);

}  // namespace acute
