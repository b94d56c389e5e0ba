#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace expzero {

using Complex = std::complex<double>;

// Complex value in the form mant * exp(logscale) with |mant| = 1 (or mant = 0).
// Keeps quantities like exp(z^2) on a contour of radius 30 representable; the
// winding and Newton machinery only ever needs arg, log|.| and ratios.
struct ScaledComplex {
    Complex mant{0.0, 0.0};
    double logscale = 0.0;

    static ScaledComplex from(Complex v) {
        ScaledComplex s;
        double a = std::abs(v);
        if (a == 0.0 || !std::isfinite(a)) {
            if (std::isfinite(a)) return s;  // exact zero
            s.mant = v / a;                  // inf input: keep direction, clamp scale
            s.logscale = std::numeric_limits<double>::max() / 4;
            return s;
        }
        s.mant = v / a;
        s.logscale = std::log(a);
        return s;
    }

    // e^L for complex L, without overflow.
    static ScaledComplex from_exponent(Complex L) {
        ScaledComplex s;
        s.mant = std::polar(1.0, L.imag());
        s.logscale = L.real();
        return s;
    }

    bool is_zero() const { return mant == Complex{0.0, 0.0}; }
    double log_abs() const {
        return is_zero() ? -std::numeric_limits<double>::infinity() : logscale;
    }
    double arg() const { return std::arg(mant); }

    Complex value() const { return is_zero() ? Complex{0, 0} : mant * std::exp(logscale); }

    friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
        if (a.is_zero() || b.is_zero()) return {};
        ScaledComplex r;
        r.mant = a.mant * b.mant;
        r.logscale = a.logscale + b.logscale;
        double m = std::abs(r.mant);
        if (m != 0.0 && m != 1.0) { r.mant /= m; r.logscale += std::log(m); }
        return r;
    }

    friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const ScaledComplex& big = a.logscale >= b.logscale ? a : b;
        const ScaledComplex& small = a.logscale >= b.logscale ? b : a;
        double d = small.logscale - big.logscale;
        Complex sum = big.mant + (d < -745.0 ? Complex{0, 0} : small.mant * std::exp(d));
        double m = std::abs(sum);
        if (m == 0.0) return {};
        return {sum / m, big.logscale + std::log(m)};
    }

    // a / b as an ordinary complex number (overflows only if the scales
    // genuinely differ by hundreds of orders of magnitude).
    friend Complex ratio(const ScaledComplex& a, const ScaledComplex& b) {
        if (b.is_zero()) return {std::numeric_limits<double>::infinity(), 0.0};
        if (a.is_zero()) return {0.0, 0.0};
        return a.mant / b.mant * std::exp(a.logscale - b.logscale);
    }
};

}  // namespace expzero
