#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "ouac/measure.hpp"
#include "ouac/rng.hpp"
#include "ouac/structure.hpp"

namespace ouac {

enum class AbsContinuity { Yes, No, TheoremInapplicableSingularA };
std::string to_string(AbsContinuity v);

// Decision outcome with certificate. When the measure exhausts, `witness`
// holds a subspace of the support span whose Krylov span (plus the Gaussian
// part, when present) fills the ambient space and which carries infinite
// mass outside each of its hyperplanes. Otherwise `obstruction` holds a
// basis of linear forms vanishing on the Krylov span of every
// infinite-activity generator: a hyperplane traps all infinite activity.
struct ExhaustionVerdict {
    bool controllable = false;
    bool exhausts = false;
    bool tau_zero = false; // equals `exhausts` under the time-zero equivalence
    AbsContinuity abs_continuous = AbsContinuity::No;

    std::optional<Subspace> witness;
    size_t witness_r = 0;
    std::vector<size_t> witness_components;
    std::vector<RationalVector> obstruction;

    MatrixStructure structure;
    size_t m = 0;             // dimension of the support span
    size_t kappa_effective = 0; // cyclic index, or its Gaussian analogue
    bool gaussian_part = false;
};

bool is_controllable(const RationalMatrix& a, const Subspace& support_span);

ExhaustionVerdict decide_exhaustion(const RationalMatrix& a, const MeasureSpec& spec);

// Same decision with a Brownian component whose image is `w_image`: every
// fullness test gains the Krylov span of the Gaussian image.
ExhaustionVerdict decide_exhaustion_with_gaussian(const RationalMatrix& a,
                                                  const MeasureSpec& spec,
                                                  const Subspace& w_image);

// Linearly independent vectors b_1..b_r in the support span whose Krylov
// spans sum to the full space; r is at least the cyclic index and at most
// the support dimension. Deterministic.
std::vector<RationalVector> heymann_sequence(const RationalMatrix& a,
                                             const Subspace& support_span);

struct GarlandCone {
    std::vector<Rational> axis;  // exact support direction the cone envelopes
    Eigen::VectorXd axis_unit;
    double half_width = 0.0;     // radians
    double inner_radius = 0.0;
    bool mass_infinite = false;
    double mass_lower_bound = 0.0;
    size_t component = 0;
};

// Disjoint cones such that any selection of one vector per cone is a
// generating sequence; certified by exact rank at the axes plus a
// singular-value perturbation margin with a 10x safety factor.
struct GarlandCertificate {
    std::vector<GarlandCone> cones;
    std::vector<RationalVector> sequence; // the enveloped generating sequence
    double stack_sigma_min = 0.0;
    double perturbation_bound = 0.0;
    double safety_factor = 0.0;
};

GarlandCertificate build_garland(const RationalMatrix& a, const MeasureSpec& spec,
                                 double mass_bound, RngStream stream);

enum class Canonical2d {
    NoRealEigenvalue,       // scaled rotation
    ScalarMultipleOfIdentity,
    JordanCellType,         // one repeated eigenvalue, not diagonalizable
    DistinctRealEigenvalues
};
std::string to_string(Canonical2d c);

Canonical2d canonical_case_2d(const RationalMatrix& a);

struct TargetRegion {
    enum class Kind { HalfSpace, Box } kind = Kind::HalfSpace;
    // half-space { x : <normal, x> >= offset }
    RationalVector normal;
    Rational offset;
    // box [lo_i, hi_i] per coordinate
    RationalVector lo, hi;
};

struct NuXEstimate {
    double value = 0.0;
    double eps = 0.0;                        // truncation applied to infinite parts
    std::vector<size_t> truncated_components;
};

// Mass the time-one jump measure assigns to the target: the source measure
// pushed through s -> e^{sA} x and averaged over s in [0,1]. Deterministic
// composite Gauss quadrature with `resolution` panels, bisection-refined
// around indicator crossings.
NuXEstimate levy_measure_of_x1(const RationalMatrix& a, const MeasureSpec& spec,
                               const TargetRegion& target, size_t resolution, double eps);

} // namespace ouac
