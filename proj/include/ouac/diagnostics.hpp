#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "ouac/exhaustion.hpp"
#include "ouac/rng.hpp"
#include "ouac/simulator.hpp"

namespace ouac {

// Two-nearest-neighbor maximum-likelihood intrinsic dimension with a
// percentile bootstrap interval over the per-point log distance ratios.
struct NnEstimate {
    double estimate = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    size_t used = 0; // points with a strictly positive first-neighbor distance
};

NnEstimate nn_dimension(const Eigen::MatrixXd& points, size_t bootstrap_resamples = 1000,
                        uint64_t bootstrap_seed = 0x626f6f74ULL);

// Fraction of exactly coincident sample pairs, by hashing full-precision
// coordinates. Absolutely continuous laws collide with probability zero.
double duplicate_rate(const Eigen::MatrixXd& points);

// Fraction of samples s with |<functional, s> - offset| <= tol.
double hyperplane_concentration(const Eigen::MatrixXd& points, const RationalVector& functional,
                                double offset, double tol);

struct RankExperimentReport {
    size_t trials = 0;
    size_t failures = 0; // relative singular-value margin at or below 1e-8
    double worst_margin = 1.0;
    std::vector<double> worst_times;
};

inline constexpr double kRankMarginTolerance = 1e-8;

// Relative smallest singular value of [e^{t A} b] columns over the given
// time tuple (q times per sequence member).
double van1_margin(const RationalMatrix& a, const std::vector<RationalVector>& sequence,
                   const std::vector<double>& times);

// Random uniform time tuples; the stacked columns should keep full rank
// almost surely, so failures are expected to be zero.
RankExperimentReport van1_experiment(const RationalMatrix& a,
                                     const std::vector<RationalVector>& sequence, size_t trials,
                                     RngStream stream);

struct HyperplaneTest {
    RationalVector functional;
    double offset = 0.0;
    double tol = 0.0;
    double concentration = 0.0;
    std::optional<double> predicted_lower_bound; // P[no off-span atom jump]
};

struct DiagnosticsReport {
    double duplicate_rate = 0.0;
    NnEstimate nn;
    std::optional<HyperplaneTest> hyperplane; // obstruction-based when not exhausting
    double random_functional_max_concentration = 0.0;
    size_t sample_count = 0;
};

DiagnosticsReport build_diagnostics(const ExhaustionVerdict& verdict, const SimConfig& cfg,
                                    const SampleBatch& batch);

enum class Consistency { Consistent, Inconsistent, NoClaim };

struct ConsistencyResult {
    Consistency flag = Consistency::NoClaim;
    std::string narrative;
};

// Falsification-oriented agreement between the verdict and the sampled
// batch; an absolutely continuous verdict cannot be proven from finite
// samples, only contradicted.
ConsistencyResult consistency_check(const ExhaustionVerdict& verdict,
                                    const DiagnosticsReport& report, size_t ambient_dim);

} // namespace ouac
