#include "ouac/rational_matrix.hpp"

#include <algorithm>

namespace ouac {

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    e_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw ShapeError("ragged initializer for matrix");
        for (const auto& x : r) e_.push_back(x);
    }
}

RationalMatrix RationalMatrix::identity(size_t n) {
    RationalMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows, size_t cols) {
    RationalMatrix m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw ShapeError("row length mismatch");
        for (size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

RationalVector RationalMatrix::row(size_t i) const {
    RationalVector r(cols_);
    for (size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

RationalVector RationalMatrix::col(size_t j) const {
    RationalVector c(rows_);
    for (size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Rational RationalMatrix::trace() const {
    if (!is_square()) throw ShapeError("trace of non-square matrix");
    Rational s;
    for (size_t i = 0; i < rows_; ++i) s += at(i, i);
    return s;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix addition shape mismatch");
    RationalMatrix r(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
    return r;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix subtraction shape mismatch");
    RationalMatrix r(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
    return r;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw ShapeError("matrix product shape mismatch");
    RationalMatrix r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

RationalVector RationalMatrix::operator*(const RationalVector& v) const {
    if (cols_ != v.size()) throw ShapeError("matrix-vector shape mismatch");
    RationalVector r(rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
    return r;
}

RationalMatrix RationalMatrix::operator*(const Rational& s) const {
    RationalMatrix r(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] * s;
    return r;
}

bool RationalMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Rational& x) { return x.is_zero(); });
}

size_t rank(const RationalMatrix& m) {
    const size_t rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;

    // Clear denominators per row, then run Bareiss over mpz.
    std::vector<std::vector<mpz_class>> z(rows, std::vector<mpz_class>(cols));
    for (size_t i = 0; i < rows; ++i) {
        mpz_class l = 1;
        for (size_t j = 0; j < cols; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).denominator().get_mpz_t());
        for (size_t j = 0; j < cols; ++j)
            z[i][j] = m.at(i, j).numerator() * (l / m.at(i, j).denominator());
    }

    mpz_class prev = 1;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && z[p][c] == 0) ++p;
        if (p == rows) continue;
        if (p != r) std::swap(z[p], z[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            for (size_t j = c + 1; j < cols; ++j) {
                mpz_class t = z[r][c] * z[i][j] - z[i][c] * z[r][j];
                mpz_divexact(z[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            z[i][c] = 0;
        }
        prev = z[r][c];
        ++r;
    }
    return r;
}

RationalMatrix rref(const RationalMatrix& m, std::vector<size_t>* pivots) {
    RationalMatrix a = m;
    const size_t rows = a.rows(), cols = a.cols();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a.at(p, c).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r)
            for (size_t j = 0; j < cols; ++j) std::swap(a.at(p, j), a.at(r, j));
        Rational inv = Rational(1) / a.at(r, c);
        for (size_t j = c; j < cols; ++j) a.at(r, j) *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a.at(i, c).is_zero()) continue;
            Rational f = a.at(i, c);
            for (size_t j = c; j < cols; ++j) a.at(i, j) -= f * a.at(r, j);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return a;
}

std::vector<RationalVector> kernel_basis(const RationalMatrix& m) {
    std::vector<size_t> piv;
    RationalMatrix r = rref(m, &piv);
    const size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : piv) is_pivot[c] = true;

    std::vector<RationalVector> basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(cols);
        v[f] = 1;
        for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -r.at(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b) {
    if (b.size() != m.rows()) throw ShapeError("solve: rhs length mismatch");
    RationalMatrix aug(m.rows(), m.cols() + 1);
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    std::vector<size_t> piv;
    RationalMatrix r = rref(aug, &piv);
    for (size_t c : piv)
        if (c == m.cols()) return std::nullopt; // pivot in rhs column: inconsistent
    RationalVector x(m.cols());
    for (size_t k = 0; k < piv.size(); ++k) x[piv[k]] = r.at(k, m.cols());
    return x;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
    if (!m.is_square()) throw ShapeError("inverse of non-square matrix");
    const size_t n = m.rows();
    RationalMatrix aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    std::vector<size_t> piv;
    RationalMatrix r = rref(aug, &piv);
    if (piv.size() != n || piv[n - 1] != n - 1) return std::nullopt;
    RationalMatrix inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv.at(i, j) = r.at(i, n + j);
    return inv;
}

Rational determinant(const RationalMatrix& m) {
    if (!m.is_square()) throw ShapeError("determinant of non-square matrix");
    RationalMatrix a = m;
    const size_t n = a.rows();
    Rational det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a.at(p, c).is_zero()) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            for (size_t j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(c, j));
            det = -det;
        }
        det *= a.at(c, c);
        Rational inv = Rational(1) / a.at(c, c);
        for (size_t i = c + 1; i < n; ++i) {
            if (a.at(i, c).is_zero()) continue;
            Rational f = a.at(i, c) * inv;
            for (size_t j = c; j < n; ++j) a.at(i, j) -= f * a.at(c, j);
        }
    }
    return det;
}

} // namespace ouac
