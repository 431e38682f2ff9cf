#include "ouac/measure.hpp"

#include "ouac/errors.hpp"
#include "ouac/rational_matrix.hpp"

namespace ouac {

std::string kind_name(ComponentKind k) {
    switch (k) {
        case ComponentKind::AtomSet: return "atoms";
        case ComponentKind::InfiniteRay: return "ray";
        case ComponentKind::SubspaceAC: return "subspace";
        case ComponentKind::PolynomialCurve: return "curve";
    }
    return "?";
}

std::vector<RationalVector> MeasureComponent::generators() const {
    switch (kind()) {
        case ComponentKind::AtomSet:
            return {};
        case ComponentKind::InfiniteRay:
            return {std::get<RayGeometry>(geometry).direction};
        case ComponentKind::SubspaceAC:
            return std::get<SubspaceGeometry>(geometry).basis;
        case ComponentKind::PolynomialCurve:
            return std::get<CurveGeometry>(geometry).coefficients;
    }
    return {};
}

void MeasureComponent::validate(size_t ambient_dim, const std::string& where) const {
    auto check_vec = [&](const RationalVector& v, const std::string& field) {
        if (v.size() != ambient_dim)
            throw ValidationError(where + "." + field + ": expected " +
                                  std::to_string(ambient_dim) + " coordinates, got " +
                                  std::to_string(v.size()));
    };
    auto check_alpha = [&](const Rational& alpha) {
        if (alpha <= Rational(0) || alpha >= Rational(1))
            throw ValidationError(where + ".alpha: stability index must lie in (0,1), got " +
                                  alpha.to_string());
    };
    auto check_scale = [&](const Rational& scale) {
        if (scale <= Rational(0))
            throw ValidationError(where + ".scale: must be positive, got " + scale.to_string());
    };

    switch (kind()) {
        case ComponentKind::AtomSet: {
            const auto& g = std::get<AtomSetGeometry>(geometry);
            for (size_t i = 0; i < g.atoms.size(); ++i) {
                check_vec(g.atoms[i].point, "atoms[" + std::to_string(i) + "].point");
                if (is_zero_vector(g.atoms[i].point))
                    throw ValidationError(where + ".atoms[" + std::to_string(i) +
                                          "].point: jumps cannot sit at the origin");
                if (g.atoms[i].mass <= Rational(0))
                    throw ValidationError(where + ".atoms[" + std::to_string(i) +
                                          "].mass: must be positive");
            }
            break;
        }
        case ComponentKind::InfiniteRay: {
            const auto& g = std::get<RayGeometry>(geometry);
            check_vec(g.direction, "direction");
            if (is_zero_vector(g.direction))
                throw ValidationError(where + ".direction: must be nonzero");
            check_alpha(g.alpha);
            check_scale(g.scale);
            break;
        }
        case ComponentKind::SubspaceAC: {
            const auto& g = std::get<SubspaceGeometry>(geometry);
            if (g.basis.empty()) throw ValidationError(where + ".basis: must be nonempty");
            for (size_t i = 0; i < g.basis.size(); ++i)
                check_vec(g.basis[i], "basis[" + std::to_string(i) + "]");
            if (Subspace::span_of(ambient_dim, g.basis).dim() != g.basis.size())
                throw ValidationError(where + ".basis: vectors must be linearly independent");
            check_alpha(g.alpha);
            check_scale(g.scale);
            break;
        }
        case ComponentKind::PolynomialCurve: {
            const auto& g = std::get<CurveGeometry>(geometry);
            if (g.coefficients.empty())
                throw ValidationError(where + ".coefficients: must be nonempty");
            bool any_nonzero = false;
            for (size_t i = 0; i < g.coefficients.size(); ++i) {
                check_vec(g.coefficients[i], "coefficients[" + std::to_string(i) + "]");
                any_nonzero = any_nonzero || !is_zero_vector(g.coefficients[i]);
            }
            if (!any_nonzero)
                throw ValidationError(where + ".coefficients: curve must be nondegenerate");
            if (g.beta <= Rational(1, 2))
                throw ValidationError(where +
                                      ".beta: must exceed 1/2 so squared rung sizes are "
                                      "summable, got " +
                                      g.beta.to_string());
            break;
        }
    }
}

void MeasureSpec::validate() const {
    if (ambient_dim == 0) throw ValidationError("ambient dimension must be at least 1");
    for (size_t i = 0; i < components.size(); ++i)
        components[i].validate(ambient_dim, "measure[" + std::to_string(i) + "]");
}

Subspace MeasureSpec::support_span() const {
    std::vector<RationalVector> vecs;
    for (const auto& c : components) {
        if (c.kind() == ComponentKind::AtomSet) {
            for (const auto& a : std::get<AtomSetGeometry>(c.geometry).atoms)
                vecs.push_back(a.point);
        } else {
            auto gens = c.generators();
            vecs.insert(vecs.end(), gens.begin(), gens.end());
        }
    }
    return Subspace::span_of(ambient_dim, vecs);
}

std::vector<GeneratorSet> MeasureSpec::generator_sets() const {
    std::vector<GeneratorSet> sets;
    for (size_t i = 0; i < components.size(); ++i) {
        if (!components[i].infinite_activity()) continue;
        sets.push_back(GeneratorSet{i, components[i].generators()});
    }
    return sets;
}

bool infinite_outside(const MeasureComponent& c, const Subspace& h, const Subspace& v) {
    if (!is_hyperplane_of(h, v))
        throw ShapeError("infinite_outside: h must be a hyperplane of v");
    if (!c.infinite_activity()) return false;

    // Support near zero must live inside v for the component to be usable.
    auto gens = c.generators();
    for (const auto& g : gens)
        if (!v.contains(g)) return false;

    // Infinite mass escapes h iff some generator leaves h: a ray or subspace
    // concentrates its mass along its span, and a hyperplane can trap the
    // arc's rungs only by containing every coefficient vector.
    for (const auto& g : gens)
        if (!h.contains(g)) return true;
    return false;
}

RationalVector curve_point(const CurveGeometry& g, const Rational& s) {
    const size_t n = g.coefficients.front().size();
    RationalVector p(n);
    Rational sk(1);
    for (const auto& c : g.coefficients) {
        sk *= s;
        for (size_t i = 0; i < n; ++i) p[i] += sk * c[i];
    }
    return p;
}

} // namespace ouac
