#pragma once

#include <vector>

#include "ouac/polynomial.hpp"
#include "ouac/rational_matrix.hpp"
#include "ouac/subspace.hpp"

namespace ouac {

// Least-degree monic p with p(A) = 0, found by scanning degrees upward for
// the first linear dependence among vectorized powers of A.
Polynomial minimal_polynomial(const RationalMatrix& a);

// det(xI - A), monic, by the Faddeev-LeVerrier recurrence.
Polynomial characteristic_polynomial(const RationalMatrix& a);

// Nontrivial invariant factors of xI - A, ascending by divisibility,
// computed from determinantal divisors: d_k = gcd of all k x k minors of
// xI - A over Q[x], invariant factor i_k = d_k / d_{k-1}.
std::vector<Polynomial> invariant_factors(const RationalMatrix& a);

// Number of nontrivial invariant factors; 1 iff the minimal polynomial is
// the characteristic polynomial.
size_t cyclic_index(const RationalMatrix& a);

struct MatrixStructure {
    Polynomial minimal_polynomial;
    Polynomial characteristic_polynomial;
    size_t cyclic_index = 0;
    bool is_singular = false;
    size_t q() const { return static_cast<size_t>(minimal_polynomial.degree()); }
};

MatrixStructure analyze_structure(const RationalMatrix& a);

// Span of { A^{i-1} e_j : 1 <= i <= q, e_j basis of seeds }, with q the
// minimal polynomial degree. A-invariant and idempotent.
Subspace krylov_span(const RationalMatrix& a, const Subspace& seeds);
// Same, with the minimal polynomial degree already known.
Subspace krylov_span(const RationalMatrix& a, const Subspace& seeds, size_t q);
Subspace krylov_span_of_vector(const RationalMatrix& a, const RationalVector& v);

} // namespace ouac
