#include "ouac/polynomial.hpp"

#include <sstream>

namespace ouac {

Polynomial Polynomial::monomial(size_t degree, const Rational& coeff) {
    std::vector<Rational> c(degree + 1);
    c[degree] = coeff;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return *this * (Rational(1) / leading());
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Rational> c(std::max(c_.size(), o.c_.size()));
    for (size_t k = 0; k < c.size(); ++k) c[k] = coeff(k) + o.coeff(k);
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    std::vector<Rational> c(std::max(c_.size(), o.c_.size()));
    for (size_t k = 0; k < c.size(); ++k) c[k] = coeff(k) - o.coeff(k);
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<Rational> c(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    }
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Rational& s) const {
    std::vector<Rational> c(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) c[k] = c_[k] * s;
    return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw ValidationError("polynomial division by zero");
    std::vector<Rational> rem = c_;
    const int dd = divisor.degree();
    if (degree() < dd) return {Polynomial(), *this};
    std::vector<Rational> quo(c_.size() - divisor.c_.size() + 1);
    Rational lead_inv = Rational(1) / divisor.leading();
    for (int k = degree(); k >= dd; --k) {
        Rational f = rem[static_cast<size_t>(k)] * lead_inv;
        if (f.is_zero()) continue;
        quo[static_cast<size_t>(k - dd)] = f;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<size_t>(k - dd + j)] -= f * divisor.c_[static_cast<size_t>(j)];
    }
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

bool Polynomial::divides(const Polynomial& other) const {
    if (is_zero()) return other.is_zero();
    return other.divmod(*this).second.is_zero();
}

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        Polynomial r = x.divmod(y).second;
        x = y;
        y = r.monic(); // keep coefficients tame
    }
    return x.monic();
}

Rational Polynomial::eval(const Rational& x) const {
    Rational v;
    for (size_t k = c_.size(); k-- > 0;) v = v * x + c_[k];
    return v;
}

RationalMatrix Polynomial::eval(const RationalMatrix& a) const {
    if (!a.is_square()) throw ShapeError("polynomial of non-square matrix");
    const size_t n = a.rows();
    RationalMatrix v = RationalMatrix::zero(n, n);
    for (size_t k = c_.size(); k-- > 0;) {
        v = v * a;
        for (size_t i = 0; i < n; ++i) v.at(i, i) += c_[k];
    }
    return v;
}

std::string Polynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = c_.size(); k-- > 0;) {
        if (c_[k].is_zero()) continue;
        Rational a = c_[k];
        if (!first) {
            os << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) a = -a;
        }
        first = false;
        if (k == 0 || a != Rational(1)) os << a.to_string();
        if (k > 0) {
            if (a != Rational(1)) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

} // namespace ouac
