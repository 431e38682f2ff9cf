#include "ouac/subspace.hpp"

namespace ouac {

Subspace Subspace::full(size_t ambient_dim) {
    Subspace s(ambient_dim);
    for (size_t i = 0; i < ambient_dim; ++i) {
        RationalVector e(ambient_dim);
        e[i] = 1;
        s.basis_.push_back(std::move(e));
    }
    return s;
}

Subspace Subspace::span_of(size_t ambient_dim, const std::vector<RationalVector>& vectors) {
    Subspace s(ambient_dim);
    if (vectors.empty()) return s;
    for (const auto& v : vectors)
        if (v.size() != ambient_dim) throw ShapeError("span_of: vector length mismatch");
    RationalMatrix m = RationalMatrix::from_rows(vectors, ambient_dim);
    RationalMatrix r = rref(m);
    for (size_t i = 0; i < r.rows(); ++i) {
        RationalVector row = r.row(i);
        if (!is_zero_vector(row)) s.basis_.push_back(std::move(row));
    }
    return s;
}

bool Subspace::contains(const RationalVector& v) const {
    if (v.size() != ambient_) throw ShapeError("contains: ambient dimension mismatch");
    if (is_zero_vector(v)) return true;
    if (basis_.empty()) return false;
    // Reduce v against the RREF rows; membership iff the remainder vanishes.
    RationalVector w = v;
    for (const auto& b : basis_) {
        size_t p = 0;
        while (p < ambient_ && b[p].is_zero()) ++p;
        if (p == ambient_) continue;
        if (w[p].is_zero()) continue;
        Rational f = w[p]; // pivot entry of b is 1
        for (size_t j = 0; j < ambient_; ++j) w[j] -= f * b[j];
    }
    return is_zero_vector(w);
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw ShapeError("contains: ambient dimension mismatch");
    for (const auto& b : other.basis_)
        if (!contains(b)) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw ShapeError("sum: ambient dimension mismatch");
    std::vector<RationalVector> all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return span_of(ambient_, all);
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw ShapeError("intersect: ambient dimension mismatch");
    if (basis_.empty() || other.basis_.empty()) return zero(ambient_);
    // x = sum a_i u_i = sum b_j w_j; kernel of [U^T | -W^T] gives all (a, b).
    const size_t d1 = basis_.size(), d2 = other.basis_.size();
    RationalMatrix m(ambient_, d1 + d2);
    for (size_t i = 0; i < d1; ++i)
        for (size_t r = 0; r < ambient_; ++r) m.at(r, i) = basis_[i][r];
    for (size_t j = 0; j < d2; ++j)
        for (size_t r = 0; r < ambient_; ++r) m.at(r, d1 + j) = -other.basis_[j][r];
    std::vector<RationalVector> gens;
    for (const auto& k : kernel_basis(m)) {
        RationalVector x(ambient_);
        for (size_t i = 0; i < d1; ++i)
            for (size_t r = 0; r < ambient_; ++r) x[r] += k[i] * basis_[i][r];
        gens.push_back(std::move(x));
    }
    return span_of(ambient_, gens);
}

std::vector<RationalVector> Subspace::annihilator() const {
    if (basis_.empty()) {
        Subspace f = full(ambient_);
        return f.basis_;
    }
    return kernel_basis(RationalMatrix::from_rows(basis_, ambient_));
}

std::vector<RationalVector> Subspace::complement_basis_over(const Subspace& inner) const {
    if (!contains(inner)) throw ShapeError("complement_basis_over: not a subspace of this space");
    std::vector<RationalVector> ext;
    Subspace cur = inner;
    for (const auto& b : basis_) {
        if (cur.contains(b)) continue;
        ext.push_back(b);
        std::vector<RationalVector> up = cur.basis_;
        up.push_back(b);
        cur = span_of(ambient_, up);
        if (cur.dim() == dim()) break;
    }
    return ext;
}

bool is_hyperplane_of(const Subspace& h, const Subspace& v) {
    return h.ambient_dim() == v.ambient_dim() && v.dim() >= 1 && h.dim() + 1 == v.dim() &&
           v.contains(h);
}

Subspace hyperplane_in(const Subspace& v, const RationalVector& normal) {
    if (normal.size() != v.ambient_dim()) throw ShapeError("hyperplane_in: normal length mismatch");
    std::vector<RationalVector> kept;
    // Solve <normal, x> = 0 within the coordinates of v's basis.
    const auto& basis = v.basis();
    if (basis.empty()) return Subspace::zero(v.ambient_dim());
    RationalMatrix sys(1, basis.size());
    for (size_t i = 0; i < basis.size(); ++i) sys.at(0, i) = dot(normal, basis[i]);
    for (const auto& k : kernel_basis(sys)) {
        RationalVector x(v.ambient_dim());
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t r = 0; r < v.ambient_dim(); ++r) x[r] += k[i] * basis[i][r];
        kept.push_back(std::move(x));
    }
    return Subspace::span_of(v.ambient_dim(), kept);
}

} // namespace ouac
