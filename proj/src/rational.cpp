#include "ouac/rational.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace ouac {

namespace {

bool is_plain_integer(const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

mpz_class parse_integer(const std::string& s, const std::string& original) {
    if (!is_plain_integer(s))
        throw ValidationError("not a rational number: '" + original + "'");
    return mpz_class(s, 10);
}

mpz_class pow10z(unsigned long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
    return p;
}

} // namespace

Rational Rational::parse(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ValidationError("empty string is not a rational number");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        mpz_class num = parse_integer(s.substr(0, slash), text);
        mpz_class den = parse_integer(s.substr(slash + 1), text);
        if (den == 0) throw ValidationError("zero denominator in '" + text + "'");
        mpq_class q(num, den);
        q.canonicalize();
        return Rational(q);
    }

    // Decimal / scientific form: sign, digits, optional '.', optional exponent.
    std::string mantissa = s;
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        mantissa = s.substr(0, e);
        std::string es = s.substr(e + 1);
        if (!is_plain_integer(es))
            throw ValidationError("not a rational number: '" + text + "'");
        exp10 = std::stol(es);
    }
    std::string digits = mantissa;
    unsigned long frac_len = 0;
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
        digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
        frac_len = mantissa.size() - dot - 1;
        if (digits == "" || digits == "+" || digits == "-")
            throw ValidationError("not a rational number: '" + text + "'");
    }
    mpz_class num = parse_integer(digits, text);
    mpq_class q(num, pow10z(frac_len));
    if (exp10 > 0)
        q *= mpq_class(pow10z(static_cast<unsigned long>(exp10)));
    else if (exp10 < 0)
        q /= mpq_class(pow10z(static_cast<unsigned long>(-exp10)));
    q.canonicalize();
    return Rational(q);
}

Rational Rational::from_double_exact(double x) {
    if (!std::isfinite(x)) throw ValidationError("non-finite value is not a rational number");
    mpq_class q(x);
    q.canonicalize();
    return Rational(q);
}

Rational Rational::from_double_decimal(double x) {
    if (!std::isfinite(x)) throw ValidationError("non-finite value is not a rational number");
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) throw ValidationError("cannot format double");
    return parse(std::string(buf, ptr));
}

std::string Rational::to_string() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw ShapeError("dot: length mismatch");
    Rational s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero_vector(const RationalVector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

} // namespace ouac
