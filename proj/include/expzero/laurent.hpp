#pragma once

#include <map>

#include "expzero/winding.hpp"

namespace expzero {

struct ZerosInAnnulus : Error {
    using Error::Error;
};
struct BranchTrackingError : Error {
    using Error::Error;
};

// Sampled Laurent data of log(phi(z) (z-c)^-m) on a circle: phi(z) equals
// (z-c)^m exp(sum_k a_k (z-c)^k) on the sampling circle up to the reported
// reconstruction error.
struct LaurentProfile {
    int m = 0;
    Complex center{0, 0};
    double radius = 1.0;
    std::map<int, Complex> coeffs;
    double reconstruction_error = 0.0;
    int samples = 0;
    double bound_R = 0.0;       // see a2_growth_bound
    double bound_value = 0.0;
};

// Cauchy-estimate bound 8 log(e^R + R) / R^2 on |a_2| for a function whose
// modulus on |z| <= R is at most e^R + R, evaluated overflow-free.
inline double a2_growth_bound(double R) {
    return 8.0 * (R + std::log1p(R * std::exp(-R))) / (R * R);
}

inline LaurentProfile laurent_profile(const AnalyticFn& fn, Complex center, double radius,
                                      int K, const Tolerances& tol = {}) {
    if (K < 0) throw InputError("negative truncation order");
    {
        Contour ring = Contour::annulus(center, radius * 0.99, radius * 1.01);
        std::vector<Complex> others;
        for (const auto& p : fn.excluded)
            if (std::abs(p - center) > tol.clearance) others.push_back(p);
        AnalyticFn probe = fn;
        probe.excluded = others;
        if (count_zeros(probe, ring, tol) != 0)
            throw ZerosInAnnulus("phi has zeros in the sampling annulus");
    }

    LaurentProfile out;
    out.center = center;
    out.radius = radius;
    out.m = winding_number(fn, Contour::circle(center, radius), tol);

    int n = std::max(tol.laurent_min_samples, 8 * std::max(1, K));
    const double two_pi = 6.28318530717958647692;
    std::vector<Complex> logs;
    for (; n <= (1 << 20); n *= 2) {
        logs.assign(static_cast<std::size_t>(n), Complex{0, 0});
        std::vector<ScaledComplex> g(static_cast<std::size_t>(n));
        bool ok = true;
        for (int j = 0; j < n; ++j) {
            Complex z = center + std::polar(radius, two_pi * double(j) / double(n));
            ScaledComplex zm;
            zm.mant = std::polar(1.0, -double(out.m) * std::arg(z - center));
            zm.logscale = -double(out.m) * std::log(radius);
            g[static_cast<std::size_t>(j)] = fn.f(z) * zm;
        }
        Complex cur{g[0].log_abs(), g[0].arg()};  // principal branch at start
        logs[0] = cur;
        for (int j = 1; j <= n && ok; ++j) {
            const ScaledComplex& prev = g[static_cast<std::size_t>((j - 1) % n)];
            const ScaledComplex& next = g[static_cast<std::size_t>(j % n)];
            double dphase = detail::wrapped_arg_delta(prev, next);
            if (std::abs(dphase) >= 1.5707963267948966) {
                ok = false;
                break;
            }
            cur += Complex{next.log_abs() - prev.log_abs(), dphase};
            if (j < n) logs[static_cast<std::size_t>(j)] = cur;
        }
        if (!ok) continue;
        // closure: after a full loop the branch must return to the start
        if (std::abs(cur - logs[0]) > tol.branch_closure)
            throw BranchTrackingError("log branch failed to close around the circle");
        out.samples = n;
        break;
    }
    if (out.samples == 0)
        throw BranchTrackingError("phase steps did not settle at the sample cap");

    const int N = out.samples;
    for (int k = -K; k <= K; ++k) {
        Complex acc{0, 0};
        for (int j = 0; j < N; ++j) {
            double ang = -two_pi * double(j) * double(k) / double(N);
            acc += logs[static_cast<std::size_t>(j)] * std::polar(1.0, ang);
        }
        acc /= double(N);
        out.coeffs[k] = acc / std::pow(radius, k);
    }

    double worst = 0.0;
    for (int j = 0; j < N; ++j) {
        Complex w = std::polar(radius, two_pi * double(j) / double(N));
        Complex z = center + w;
        Complex series{0, 0};
        for (const auto& [k, a] : out.coeffs) series += a * Poly::cpow_int(w, k);
        ScaledComplex recon = ScaledComplex::from_exponent(series) *
                              ScaledComplex::from(Poly::cpow_int(w, out.m));
        ScaledComplex actual = fn.f(z);
        double rel = std::abs(ratio(recon, actual) - 1.0);
        worst = std::max(worst, rel);
    }
    out.reconstruction_error = worst;
    out.bound_R = 2.0 * radius;
    out.bound_value = a2_growth_bound(out.bound_R);
    return out;
}

struct BorelCaratheodoryReport {
    double lhs = 0.0;      // sup |phi0| on |w| <= r
    double rhs = 0.0;      // (2r/(R-r)) sup Re phi0 + ((R+r)/(R-r)) |phi0(0)|
    double sup_re = 0.0;
    double phi0_at_zero = 0.0;
    bool holds() const { return lhs <= rhs + 1e-12; }
};

// Numeric check of the modulus-versus-real-part disc inequality by dense
// boundary sampling; by the maximum principle the suprema over the discs are
// attained on the circles.
inline BorelCaratheodoryReport borel_caratheodory_check(
    const std::function<Complex(Complex)>& phi0, double r, double R, int samples = 4096) {
    if (!(0.0 <= r && r < R)) throw InputError("need 0 <= r < R");
    BorelCaratheodoryReport rep;
    const double two_pi = 6.28318530717958647692;
    for (int j = 0; j < samples; ++j) {
        double t = two_pi * double(j) / double(samples);
        rep.lhs = std::max(rep.lhs, std::abs(phi0(std::polar(r, t))));
        rep.sup_re = std::max(rep.sup_re, phi0(std::polar(R, t)).real());
    }
    rep.phi0_at_zero = std::abs(phi0(Complex{0, 0}));
    rep.rhs = (2.0 * r / (R - r)) * rep.sup_re + ((R + r) / (R - r)) * rep.phi0_at_zero;
    return rep;
}

}  // namespace expzero
