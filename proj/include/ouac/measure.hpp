#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ouac/rational.hpp"
#include "ouac/subspace.hpp"

namespace ouac {

// Finite symbolic description of the jumping measure: a list of typed
// components whose geometry is exact. Four archetypes keep the
// every-hyperplane quantifier decidable by linear algebra while covering
// atoms, rays/lines, subspace-supported absolutely continuous parts and
// polynomial arcs.

struct Atom {
    RationalVector point;
    Rational mass; // > 0
};

struct AtomSetGeometry {
    std::vector<Atom> atoms; // finite total mass
};

// Infinite-activity mass on { r * direction : r > 0 } (both signs when
// two_sided) with radial tail mass scale * eps^{-alpha} / alpha above eps.
struct RayGeometry {
    RationalVector direction; // nonzero
    Rational alpha;           // in (0,1): small jumps summable
    Rational scale;           // > 0
    bool two_sided = false;
};

// Absolutely continuous on a subspace: uniform directions, same radial law.
struct SubspaceGeometry {
    std::vector<RationalVector> basis; // independent, dim >= 1
    Rational alpha;
    Rational scale;
};

// Discrete rungs gamma(s_j) on the arc gamma(s) = sum_k s^k c_k with the
// parameter ladder s_j = j^{-beta}, unit mass per rung. Total mass is
// infinite; beta > 1/2 keeps sum |gamma(s_j)|^2 finite.
struct CurveGeometry {
    std::vector<RationalVector> coefficients; // c_1 ... c_K
    Rational beta;
};

using ComponentGeometry =
    std::variant<AtomSetGeometry, RayGeometry, SubspaceGeometry, CurveGeometry>;

enum class ComponentKind { AtomSet, InfiniteRay, SubspaceAC, PolynomialCurve };

struct MeasureComponent {
    ComponentGeometry geometry;

    ComponentKind kind() const { return static_cast<ComponentKind>(geometry.index()); }
    bool infinite_activity() const { return kind() != ComponentKind::AtomSet; }

    // Vectors spanning the smallest subspace containing the support near 0;
    // empty for finite-activity components.
    std::vector<RationalVector> generators() const;

    // Throws ValidationError naming the offending field.
    void validate(size_t ambient_dim, const std::string& where) const;
};

struct GeneratorSet {
    size_t component_id = 0;
    std::vector<RationalVector> vectors;
};

struct MeasureSpec {
    size_t ambient_dim = 0;
    std::vector<MeasureComponent> components;

    void validate() const;

    // Span of all component supports; stands in for the image of the noise
    // coefficient matrix when none is given explicitly.
    Subspace support_span() const;

    // One set per infinite-activity component, labelled by component index.
    std::vector<GeneratorSet> generator_sets() const;
};

std::string kind_name(ComponentKind k);

// True iff the component places infinite mass in V minus H, where H is a
// hyperplane of V; exact. Components whose support near zero leaves V are
// not usable in V and yield false.
bool infinite_outside(const MeasureComponent& c, const Subspace& h, const Subspace& v);

// Exact evaluation of gamma(s) for a curve component.
RationalVector curve_point(const CurveGeometry& g, const Rational& s);

} // namespace ouac
