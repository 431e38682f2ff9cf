#include "ouac/structure.hpp"

namespace ouac {

namespace {

RationalVector vectorize(const RationalMatrix& m) {
    RationalVector v;
    v.reserve(m.rows() * m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
    return v;
}

using PolyMatrix = std::vector<std::vector<Polynomial>>;

PolyMatrix char_matrix(const RationalMatrix& a) {
    const size_t n = a.rows();
    PolyMatrix m(n, std::vector<Polynomial>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            std::vector<Rational> c{-a.at(i, j)};
            if (i == j) c.push_back(1);
            m[i][j] = Polynomial(std::move(c));
        }
    return m;
}

Polynomial poly_minor(const PolyMatrix& m, const std::vector<size_t>& rows,
                      const std::vector<size_t>& cols) {
    const size_t k = rows.size();
    if (k == 1) return m[rows[0]][cols[0]];
    Polynomial det;
    std::vector<size_t> sub_rows(rows.begin() + 1, rows.end());
    for (size_t j = 0; j < k; ++j) {
        const Polynomial& e = m[rows[0]][cols[j]];
        if (e.is_zero()) continue;
        std::vector<size_t> sub_cols;
        sub_cols.reserve(k - 1);
        for (size_t t = 0; t < k; ++t)
            if (t != j) sub_cols.push_back(cols[t]);
        Polynomial term = e * poly_minor(m, sub_rows, sub_cols);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

// Visits all k-subsets of {0..n-1}.
template <typename F>
void for_each_subset(size_t n, size_t k, F&& f) {
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(idx);
        size_t i = k;
        while (i-- > 0) {
            if (idx[i] != i + n - k) {
                ++idx[i];
                for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
    }
}

} // namespace

Polynomial minimal_polynomial(const RationalMatrix& a) {
    if (!a.is_square()) throw ShapeError("minimal polynomial of non-square matrix");
    const size_t n = a.rows();
    if (n == 0) throw ShapeError("minimal polynomial of empty matrix");

    std::vector<RationalVector> power_vecs{vectorize(RationalMatrix::identity(n))};
    RationalMatrix power = RationalMatrix::identity(n);
    for (size_t d = 1; d <= n; ++d) {
        power = power * a;
        RationalVector target = vectorize(power);
        RationalMatrix sys(n * n, d);
        for (size_t c = 0; c < d; ++c)
            for (size_t r = 0; r < n * n; ++r) sys.at(r, c) = power_vecs[c][r];
        if (auto x = solve(sys, target)) {
            std::vector<Rational> coeffs(d + 1);
            for (size_t k = 0; k < d; ++k) coeffs[k] = -(*x)[k];
            coeffs[d] = 1;
            return Polynomial(std::move(coeffs));
        }
        power_vecs.push_back(std::move(target));
    }
    throw NumericalError("minimal polynomial scan failed"); // unreachable: Cayley-Hamilton
}

Polynomial characteristic_polynomial(const RationalMatrix& a) {
    if (!a.is_square()) throw ShapeError("characteristic polynomial of non-square matrix");
    const size_t n = a.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    RationalMatrix m = RationalMatrix::zero(n, n);
    for (size_t k = 1; k <= n; ++k) {
        for (size_t i = 0; i < n; ++i) m.at(i, i) += c[n - k + 1];
        m = a * m;
        c[n - k] = -(m.trace() / Rational(static_cast<long>(k)));
    }
    return Polynomial(std::move(c));
}

std::vector<Polynomial> invariant_factors(const RationalMatrix& a) {
    if (!a.is_square()) throw ShapeError("invariant factors of non-square matrix");
    const size_t n = a.rows();
    PolyMatrix xia = char_matrix(a);

    std::vector<Polynomial> dets(n + 1);
    dets[0] = Polynomial::constant(1);
    for (size_t k = 1; k <= n; ++k) {
        Polynomial g;
        bool unit = false;
        for_each_subset(n, k, [&](const std::vector<size_t>& rows) {
            if (unit) return;
            for_each_subset(n, k, [&](const std::vector<size_t>& cols) {
                if (unit) return;
                Polynomial m = poly_minor(xia, rows, cols);
                if (m.is_zero()) return;
                g = Polynomial::gcd(g, m);
                if (g.degree() == 0) unit = true;
            });
        });
        dets[k] = unit ? Polynomial::constant(1) : g.monic();
    }

    std::vector<Polynomial> factors;
    for (size_t k = 1; k <= n; ++k) {
        auto [quo, rem] = dets[k].divmod(dets[k - 1]);
        if (!rem.is_zero())
            throw NumericalError("determinantal divisors failed to divide");
        if (quo.degree() >= 1) factors.push_back(quo.monic());
    }
    return factors;
}

size_t cyclic_index(const RationalMatrix& a) {
    return invariant_factors(a).size();
}

MatrixStructure analyze_structure(const RationalMatrix& a) {
    MatrixStructure s;
    s.minimal_polynomial = minimal_polynomial(a);
    s.characteristic_polynomial = characteristic_polynomial(a);
    s.cyclic_index = cyclic_index(a);
    s.is_singular = s.characteristic_polynomial.coeff(0).is_zero();
    return s;
}

Subspace krylov_span(const RationalMatrix& a, const Subspace& seeds) {
    if (!a.is_square()) throw ShapeError("krylov_span: drift matrix must be square");
    return krylov_span(a, seeds, static_cast<size_t>(minimal_polynomial(a).degree()));
}

Subspace krylov_span(const RationalMatrix& a, const Subspace& seeds, size_t q) {
    if (!a.is_square()) throw ShapeError("krylov_span: drift matrix must be square");
    if (a.rows() != seeds.ambient_dim()) throw ShapeError("krylov_span: ambient dimension mismatch");
    std::vector<RationalVector> vecs;
    for (const auto& b : seeds.basis()) {
        RationalVector v = b;
        vecs.push_back(v);
        for (size_t i = 1; i < q; ++i) {
            v = a * v;
            vecs.push_back(v);
        }
    }
    return Subspace::span_of(seeds.ambient_dim(), vecs);
}

Subspace krylov_span_of_vector(const RationalMatrix& a, const RationalVector& v) {
    return krylov_span(a, Subspace::span_of(a.rows(), {v}));
}

} // namespace ouac
