#include "ouac/catalog.hpp"

#include "ouac/errors.hpp"

namespace ouac {

bool component_mass_infinite_on(const MeasureComponent& c, const Subspace& carrier,
                                const std::vector<Subspace>& excluded) {
    if (!c.infinite_activity()) return false;
    switch (c.kind()) {
        case ComponentKind::AtomSet:
            return false;
        case ComponentKind::InfiniteRay: {
            const auto& d = std::get<RayGeometry>(c.geometry).direction;
            if (!carrier.contains(d)) return false;
            for (const auto& e : excluded)
                if (e.contains(d)) return false;
            return true;
        }
        case ComponentKind::SubspaceAC: {
            const auto& basis = std::get<SubspaceGeometry>(c.geometry).basis;
            Subspace v = Subspace::span_of(carrier.ambient_dim(), basis);
            if (!carrier.contains(v)) return false;
            for (const auto& e : excluded)
                if (e.contains(v)) return false; // the whole carrier is trapped
            return true;
        }
        case ComponentKind::PolynomialCurve: {
            const auto& coeffs = std::get<CurveGeometry>(c.geometry).coefficients;
            for (const auto& ck : coeffs)
                if (!carrier.contains(ck)) return false; // only finitely many rungs inside
            for (const auto& e : excluded) {
                bool escapes = false;
                for (const auto& ck : coeffs) escapes = escapes || !e.contains(ck);
                if (!escapes) return false; // arc trapped inside an excluded set
            }
            return true;
        }
    }
    return false;
}

bool spec_mass_infinite_on(const MeasureSpec& spec, const Subspace& carrier,
                           const std::vector<Subspace>& excluded) {
    for (const auto& c : spec.components)
        if (component_mass_infinite_on(c, carrier, excluded)) return true;
    return false;
}

namespace {

RationalVector rv2(long a, long b) { return {Rational(a), Rational(b)}; }
RationalVector rv3(long a, long b, long c) { return {Rational(a), Rational(b), Rational(c)}; }

Subspace x_axis2() { return Subspace::span_of(2, {rv2(1, 0)}); }
Subspace y_axis2() { return Subspace::span_of(2, {rv2(0, 1)}); }

Subspace plane_x0() { return Subspace::span_of(3, {rv3(0, 1, 0), rv3(0, 0, 1)}); }
Subspace plane_y0() { return Subspace::span_of(3, {rv3(1, 0, 0), rv3(0, 0, 1)}); }
Subspace plane_z0() { return Subspace::span_of(3, {rv3(1, 0, 0), rv3(0, 1, 0)}); }
Subspace axis_x3() { return Subspace::span_of(3, {rv3(1, 0, 0)}); }
Subspace axis_y3() { return Subspace::span_of(3, {rv3(0, 1, 0)}); }
Subspace axis_z3() { return Subspace::span_of(3, {rv3(0, 0, 1)}); }

Subspace infinite_generator_span(const MeasureSpec& spec) {
    std::vector<RationalVector> gens;
    for (const auto& c : spec.components) {
        if (!c.infinite_activity()) continue;
        auto g = c.generators();
        gens.insert(gens.end(), g.begin(), g.end());
    }
    return Subspace::span_of(spec.ambient_dim, gens);
}

// (a) scaled rotation: infinite activity anywhere suffices.
bool expected_2a(const MeasureSpec& spec) {
    return spec_mass_infinite_on(spec, Subspace::full(2), {});
}

// (b) scalar matrix: no single line may carry all infinite activity.
bool expected_2b(const MeasureSpec& spec) {
    return infinite_generator_span(spec).dim() == 2;
}

// (c) one Jordan cell: infinite mass off the eigenline Vect{(1,0)}.
bool expected_2c(const MeasureSpec& spec) {
    return spec_mass_infinite_on(spec, Subspace::full(2), {x_axis2()});
}

// (d) distinct real eigenvalues: infinite mass off both axes, or infinite
// mass on each axis separately.
bool expected_2d(const MeasureSpec& spec) {
    if (spec_mass_infinite_on(spec, Subspace::full(2), {x_axis2(), y_axis2()})) return true;
    return spec_mass_infinite_on(spec, x_axis2(), {}) &&
           spec_mass_infinite_on(spec, y_axis2(), {});
}

// (f) full Jordan cell: infinite mass off the plane z = 0.
bool expected_3f(const MeasureSpec& spec) {
    return spec_mass_infinite_on(spec, Subspace::full(3), {plane_z0()});
}

// (g) eigenvalue plus Jordan pair: infinite mass off x = 0 and infinite
// mass off z = 0 (one component may cover both).
bool expected_3g(const MeasureSpec& spec) {
    return spec_mass_infinite_on(spec, Subspace::full(3), {plane_x0()}) &&
           spec_mass_infinite_on(spec, Subspace::full(3), {plane_z0()});
}

// (h) repeated eigenvalue with one Jordan pair: no functional with normal in
// the xz-plane may annihilate all infinite activity.
bool expected_3h(const MeasureSpec& spec) {
    Subspace w = infinite_generator_span(spec);
    Subspace w_perp = Subspace::span_of(3, w.annihilator());
    Subspace oxz = Subspace::span_of(3, {rv3(1, 0, 0), rv3(0, 0, 1)});
    return w_perp.intersect(oxz).dim() == 0;
}

// (i) distinct eigenvalues: eight ways to distribute infinite mass over the
// coordinate planes and axes.
bool expected_3i(const MeasureSpec& spec) {
    auto on = [&](const Subspace& carrier, const std::vector<Subspace>& excl) {
        return spec_mass_infinite_on(spec, carrier, excl);
    };
    const Subspace full = Subspace::full(3);
    const Subspace hx = plane_x0(), hy = plane_y0(), hz = plane_z0();
    if (on(full, {hx, hy, hz})) return true;
    if (on(hx, {hy, hz}) && on(hy, {hx})) return true;
    if (on(hy, {hx, hz}) && on(hx, {hy})) return true;
    if (on(hy, {hz, hx}) && on(hz, {hy})) return true;
    if (on(hz, {hy, hx}) && on(hy, {hz})) return true;
    if (on(hz, {hx, hy}) && on(hx, {hz})) return true;
    if (on(hx, {hz, hy}) && on(hz, {hx})) return true;
    if (on(axis_z3(), {hz}) && on(axis_x3(), {hx}) && on(axis_y3(), {hy})) return true;
    return false;
}

MeasureComponent ray(RationalVector dir, bool two_sided = false) {
    return MeasureComponent{RayGeometry{std::move(dir), Rational(1, 2), Rational(1), two_sided}};
}

MeasureComponent subspace_ac(std::vector<RationalVector> basis) {
    return MeasureComponent{SubspaceGeometry{std::move(basis), Rational(1, 2), Rational(1)}};
}

MeasureComponent curve(std::vector<RationalVector> coeffs) {
    return MeasureComponent{CurveGeometry{std::move(coeffs), Rational(3, 2)}};
}

MeasureComponent atoms(std::vector<Atom> as) { return MeasureComponent{AtomSetGeometry{std::move(as)}}; }

} // namespace

std::vector<CatalogCase> catalog_cases(size_t dim) {
    if (dim == 2) {
        return {
            {"a", "no real eigenvalue (scaled rotation)",
             "any infinite activity at all",
             RationalMatrix{{Rational(1), Rational(2)}, {Rational(-2), Rational(1)}}, 1,
             &expected_2a},
            {"b", "scalar multiple of the identity",
             "infinite mass escaping every single line",
             RationalMatrix{{Rational(3), Rational(0)}, {Rational(0), Rational(3)}}, 2,
             &expected_2b},
            {"c", "Jordan cell",
             "infinite mass off the line spanned by (1,0)",
             RationalMatrix{{Rational(2), Rational(1)}, {Rational(0), Rational(2)}}, 1,
             &expected_2c},
            {"d", "distinct real eigenvalues (diagonal)",
             "infinite mass off both axes, or on each axis separately",
             RationalMatrix{{Rational(1), Rational(0)}, {Rational(0), Rational(2)}}, 1,
             &expected_2d},
        };
    }
    if (dim == 3) {
        RationalMatrix f(3, 3), g(3, 3), h(3, 3), i(3, 3);
        // f: one 3x3 Jordan cell at 1
        f.at(0, 0) = 1; f.at(0, 1) = 1; f.at(1, 1) = 1; f.at(1, 2) = 1; f.at(2, 2) = 1;
        // g: eigenvalue 1 plus a Jordan pair at 2
        g.at(0, 0) = 1; g.at(1, 1) = 2; g.at(1, 2) = 1; g.at(2, 2) = 2;
        // h: eigenvalue 2 plus a Jordan pair at 2
        h.at(0, 0) = 2; h.at(1, 1) = 2; h.at(1, 2) = 1; h.at(2, 2) = 2;
        // i: distinct diagonal
        i.at(0, 0) = 1; i.at(1, 1) = 2; i.at(2, 2) = 3;
        return {
            {"f", "single Jordan cell", "infinite mass off the plane z = 0", f, 1, &expected_3f},
            {"g", "simple eigenvalue plus Jordan pair",
             "infinite mass off x = 0 and infinite mass off z = 0", g, 1, &expected_3g},
            {"h", "repeated eigenvalue with Jordan pair",
             "no hyperplane normal in the xz-plane traps all infinite mass", h, 2, &expected_3h},
            {"i", "distinct real eigenvalues (diagonal)",
             "one of eight distributions over the coordinate planes and axes", i, 1,
             &expected_3i},
        };
    }
    throw ValidationError("catalog supports dimensions 2 and 3 only");
}

std::vector<MeasureSpec> catalog_battery(size_t dim) {
    if (dim == 2) {
        std::vector<MeasureSpec> specs;
        auto add = [&](std::vector<MeasureComponent> comps) {
            specs.push_back(MeasureSpec{2, std::move(comps)});
        };
        add({});
        add({atoms({{rv2(1, 0), Rational(2)}, {rv2(0, 1), Rational(1, 2)}})});
        add({ray(rv2(1, 0))});
        add({ray(rv2(0, 1))});
        add({ray(rv2(1, 1))});
        add({ray(rv2(1, 0)), ray(rv2(0, 1))});
        add({ray(rv2(1, 0)), ray(rv2(1, 1))});
        add({ray(rv2(1, 0), /*two_sided=*/true)});
        add({subspace_ac({rv2(1, 2)})});
        add({subspace_ac({rv2(1, 0), rv2(0, 1)})});
        add({curve({rv2(1, 0), rv2(0, 1)})});
        add({curve({rv2(0, 1), rv2(1, 0)}), atoms({{rv2(3, 4), Rational(1)}})});
        return specs;
    }
    if (dim == 3) {
        std::vector<MeasureSpec> specs;
        auto add = [&](std::vector<MeasureComponent> comps) {
            specs.push_back(MeasureSpec{3, std::move(comps)});
        };
        add({});
        add({atoms({{rv3(1, 1, 1), Rational(1)}})});
        add({ray(rv3(1, 0, 0))});
        add({ray(rv3(1, 1, 1))});
        add({ray(rv3(1, 0, 0)), ray(rv3(0, 0, 1))});
        add({ray(rv3(1, 0, 0)), ray(rv3(0, 1, 0)), ray(rv3(0, 0, 1))});
        add({subspace_ac({rv3(1, 0, 0), rv3(0, 1, 0)})});
        add({curve({rv3(1, 0, 0), rv3(0, 1, 0), rv3(0, 0, 1)})});
        return specs;
    }
    throw ValidationError("catalog supports dimensions 2 and 3 only");
}

} // namespace ouac
