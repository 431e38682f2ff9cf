#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "ouac/rational.hpp"

namespace ouac {

// Dense row-major matrix over the rationals.
class RationalMatrix {
public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RationalMatrix identity(size_t n);
    static RationalMatrix zero(size_t rows, size_t cols) { return RationalMatrix(rows, cols); }
    static RationalMatrix from_rows(const std::vector<RationalVector>& rows, size_t cols);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const Rational& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }
    Rational& operator()(size_t i, size_t j) { return at(i, j); }
    const Rational& operator()(size_t i, size_t j) const { return at(i, j); }

    RationalVector row(size_t i) const;
    RationalVector col(size_t j) const;

    RationalMatrix transpose() const;
    Rational trace() const;

    RationalMatrix operator+(const RationalMatrix& o) const;
    RationalMatrix operator-(const RationalMatrix& o) const;
    RationalMatrix operator*(const RationalMatrix& o) const;
    RationalVector operator*(const RationalVector& v) const;
    RationalMatrix operator*(const Rational& s) const;

    bool operator==(const RationalMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool is_zero() const;

private:
    size_t rows_, cols_;
    std::vector<Rational> e_;
};

// Exact rank by fraction-free (Bareiss) elimination on a denominator-cleared
// integer copy; row scaling cannot change the rank.
size_t rank(const RationalMatrix& m);

// Reduced row echelon form; pivot column indices appended to `pivots` if given.
RationalMatrix rref(const RationalMatrix& m, std::vector<size_t>* pivots = nullptr);

// Basis of { x : m x = 0 }.
std::vector<RationalVector> kernel_basis(const RationalMatrix& m);

// One exact solution of m x = b, or nullopt when inconsistent.
std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b);

Rational determinant(const RationalMatrix& m);

// Exact inverse, or nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

} // namespace ouac
