#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>

#include "expzero/errors.hpp"

namespace expzero {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// cpp_rational keeps lowest terms with positive denominator, so values are
// already in the canonical form the interchange format expects.
inline std::string rational_to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational rational_from_string(const std::string& s) {
    try {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw InputError("rational with zero denominator: " + s);
        return Rational(num, den);
    } catch (const std::exception& e) {
        throw InputError("bad rational '" + s + "': " + e.what());
    }
}

inline double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rational_gcd(const Rational& a, const Rational& b) {
    // gcd(p1/q1, p2/q2) = gcd(p1, p2) / lcm(q1, q2)
    BigInt num = gcd(numerator(a) < 0 ? BigInt(-numerator(a)) : numerator(a),
                     numerator(b) < 0 ? BigInt(-numerator(b)) : numerator(b));
    BigInt den = lcm(denominator(a), denominator(b));
    return Rational(num, den);
}

// A Gaussian rational a + b*i with exact components.
struct GaussRat {
    Rational re{0};
    Rational im{0};

    GaussRat() = default;
    GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussRat(long n) : re(n) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw InputError("division by zero Gaussian rational");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    GaussRat conj() const { return {re, -im}; }

    std::complex<double> to_complex() const {
        return {rational_to_double(re), rational_to_double(im)};
    }

    std::string str() const { return rational_to_string(re) + (im == 0 ? "" : "+i*" + rational_to_string(im)); }
};

}  // namespace expzero
