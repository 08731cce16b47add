#pragma once

#include "acute/pointset.hpp"

#include <optional>
#include <string_view>

namespace acute {

enum class Classification { Acute, NonObtuse, Obtuse };
std::string_view classification_name(Classification c);

struct AngleReport {
    double min_cos = 1;  // cosine of the largest angle
    TripleWitness witness;
    Classification classification = Classification::Acute;
    bool exact = false;
    std::uint64_t triple_count = 0;
    std::uint64_t escalated = 0;  // triples re-decided in exact arithmetic
    double elapsed = 0;
};

struct VerifyOptions {
    unsigned threads = 1;
    // Float inputs are dyadic rationals, so band triples can always be
    // re-decided exactly; turning this off leaves them float-decided and
    // marks the report non-exact.
    bool escalate = true;
};

// Cosine threshold: pass iff every apex angle is < arccos(tau) (<= when strict is false).
struct ThresholdQuery {
    Rational tau = 0;
    bool strict = true;
};

struct ThresholdResult {
    bool pass = true;
    std::optional<TripleWitness> witness;  // first violation in enumeration order
    double witness_cos = 0;
    bool exact = true;
    double elapsed = 0;
};

inline constexpr double kFloatBand = 1e-9;

AngleReport verify(const PointSet& X, const VerifyOptions& opt = {});
ThresholdResult verify_threshold(const PointSet& X, const ThresholdQuery& q, const VerifyOptions& opt = {});
AngleReport classify_hypercube(std::size_t d, const VerifyOptions& opt = {});

// Exact three-way comparison of cos(angle) = dot / sqrt(n1 n2) against tau.
int compare_cos(const BigInt& dot, const BigInt& n1, const BigInt& n2, const Rational& tau);

}  // namespace acute
