#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ouac/rational.hpp"
#include "ouac/rational_matrix.hpp"

namespace ouac {

// Univariate polynomial over the rationals, coefficients ascending by degree,
// trailing zeros stripped (zero polynomial has empty coefficient list).
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Polynomial constant(const Rational& v) { return Polynomial({v}); }
    static Polynomial monomial(size_t degree, const Rational& coeff);

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == Rational(1); }

    Polynomial monic() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& s) const;
    bool operator==(const Polynomial& o) const { return c_ == o.c_; }

    // Euclidean division; divisor must be nonzero.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
    bool divides(const Polynomial& other) const; // this | other

    static Polynomial gcd(const Polynomial& a, const Polynomial& b); // monic

    Rational eval(const Rational& x) const;
    RationalMatrix eval(const RationalMatrix& a) const; // Horner on a square matrix

    std::string to_string(const std::string& var = "x") const;

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

} // namespace ouac
