#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "ouac/measure.hpp"
#include "ouac/rational_matrix.hpp"
#include "ouac/rng.hpp"
#include "ouac/sampling.hpp"

namespace ouac {

struct SimConfig {
    RationalMatrix a;
    MeasureSpec spec;
    Eigen::VectorXd x0;       // zero when empty
    double horizon = 1.0;
    double eps = 1e-3;        // small-jump truncation
    size_t sample_count = 1;
    uint64_t seed = 0;
    unsigned workers = 1;

    void validate() const;
};

struct ComponentBias {
    size_t component = 0;
    double bound = 0.0; // mean displacement dropped below eps, per run
};

struct SampleBatch {
    Eigen::MatrixXd points; // sample_count x n
    std::vector<uint32_t> jump_counts;
    std::vector<ComponentBias> truncation_bias;
    uint64_t seed = 0;
    unsigned workers = 1;
    double eps = 0.0;
    double horizon = 1.0;
};

// e^{hA} x0 plus the flowed jumps, applied in time order.
Eigen::VectorXd endpoint_from_jumps(const Eigen::MatrixXd& a_float, const Eigen::VectorXd& x0,
                                    double horizon, const std::vector<Jump>& jumps);

// One endpoint draw; all component jumps come from per-component substreams.
Eigen::VectorXd sample_endpoint(const SimConfig& cfg, RngStream stream);

// sample_count independent endpoints; per-sample substreams keyed by sample
// index make the batch bit-identical for any worker count.
SampleBatch sample_batch(const SimConfig& cfg);

// Empirical check that the first q Poisson arrival times, rescaled by the
// (q+1)-th, match the order statistics of q uniforms: per-marginal
// Kolmogorov-Smirnov distances against Beta(j, q+1-j).
struct OrderStatReport {
    size_t q = 0;
    double rate = 0.0;
    size_t trials = 0;
    std::vector<double> ks_distance; // marginal j = 1..q
    double critical_1pct = 0.0;      // 1.628 / sqrt(trials)
};

OrderStatReport conditional_jump_times_check(size_t q, double rate, size_t trials,
                                             RngStream stream);

// Regularized incomplete beta with integer parameters, as a binomial tail.
double beta_cdf(size_t a, size_t b, double x);

} // namespace ouac
