#pragma once

#include <vector>

#include "ouac/rational_matrix.hpp"

namespace ouac {

// Linear subspace of Q^n kept in canonical form: the basis rows are the
// nonzero rows of a reduced row echelon form, so equal subspaces compare
// equal member-wise.
class Subspace {
public:
    explicit Subspace(size_t ambient_dim) : ambient_(ambient_dim) {}

    static Subspace zero(size_t ambient_dim) { return Subspace(ambient_dim); }
    static Subspace full(size_t ambient_dim);
    static Subspace span_of(size_t ambient_dim, const std::vector<RationalVector>& vectors);

    size_t ambient_dim() const { return ambient_; }
    size_t dim() const { return basis_.size(); }
    bool is_zero() const { return basis_.empty(); }
    bool is_full() const { return dim() == ambient_; }
    const std::vector<RationalVector>& basis() const { return basis_; }

    bool contains(const RationalVector& v) const;
    bool contains(const Subspace& other) const;

    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;

    bool operator==(const Subspace& other) const {
        return ambient_ == other.ambient_ && basis_ == other.basis_;
    }

    // Basis of the annihilator { f : <f, v> = 0 for all v in the subspace }.
    std::vector<RationalVector> annihilator() const;

    // Vectors from this subspace extending a basis of `inner` to one of this;
    // requires inner to be contained here.
    std::vector<RationalVector> complement_basis_over(const Subspace& inner) const;

private:
    size_t ambient_;
    std::vector<RationalVector> basis_;
};

// True when h is a hyperplane of v: contained with codimension one.
bool is_hyperplane_of(const Subspace& h, const Subspace& v);

// { x in v : <normal, x> = 0 }, a hyperplane of v when the functional does
// not vanish on v.
Subspace hyperplane_in(const Subspace& v, const RationalVector& normal);

} // namespace ouac
