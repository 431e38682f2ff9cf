#pragma once

#include <string>
#include <vector>

#include "ouac/measure.hpp"
#include "ouac/rational_matrix.hpp"

namespace ouac {

// Canonical drift classes in dimensions 2 and 3 with hand-coded evaluators
// of where the jumping measure must carry infinite mass for the time-one law
// to be absolutely continuous. The evaluators work straight off the
// component geometry (no Krylov machinery), so they double as an
// independent oracle for the decision procedure.
struct CatalogCase {
    std::string label;        // a..d for n=2, f..i for n=3
    std::string title;        // drift class
    std::string infinity_set; // plain-language description
    RationalMatrix drift;
    size_t kappa = 0;
    bool (*expected_ac)(const MeasureSpec&); // expected absolute continuity
};

std::vector<CatalogCase> catalog_cases(size_t dim); // dim must be 2 or 3

// Measure batteries exercising rays on/off the distinguished axes, lines,
// subspace-supported a.c. parts, polynomial arcs and atom-only specs.
std::vector<MeasureSpec> catalog_battery(size_t dim); // 12 specs (n=2), 8 (n=3)

// True when the component places infinite mass on
// carrier  minus  union(excluded), exactly.
bool component_mass_infinite_on(const MeasureComponent& c, const Subspace& carrier,
                                const std::vector<Subspace>& excluded);
bool spec_mass_infinite_on(const MeasureSpec& spec, const Subspace& carrier,
                           const std::vector<Subspace>& excluded);

} // namespace ouac
