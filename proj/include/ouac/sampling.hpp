#pragma once

#include <Eigen/Dense>

#include <vector>

#include "ouac/measure.hpp"
#include "ouac/rng.hpp"

namespace ouac {

struct Jump {
    double time = 0.0;
    Eigen::VectorXd vec;
};

// Jumps of magnitude >= eps on [0, horizon] for one component, sorted by
// time. Atom components carry finite activity and are never truncated; the
// infinite archetypes become compound Poisson once cut at eps.
std::vector<Jump> sample_jumps(const MeasureComponent& c, size_t ambient_dim, double horizon,
                               double eps, RngStream stream);

// Expected jump intensity above the truncation level, per unit time.
double truncated_rate(const MeasureComponent& c, double eps);

// Bound on the mean displacement carried by the dropped sub-eps jumps, per
// unit time; infinite when the small jumps are not absolutely summable
// (curve ladders with beta <= 1).
double truncation_bias_bound(const MeasureComponent& c, double eps);

} // namespace ouac
