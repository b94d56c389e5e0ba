#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "expzero/config.hpp"
#include "expzero/contour.hpp"
#include "expzero/winding.hpp"

namespace expzero {

struct DegenerateLattice : Error {
    using Error::Error;
};
struct LatticePointInput : Error {
    using Error::Error;
};

// Weierstrass data for the lattice Z omega1 + Z omega2 (full periods,
// normalized so Im(omega2/omega1) > 0). eta1, eta2 are the full quasi-periods
// zeta(z + omega_i) = zeta(z) + eta_i. Evaluation reduces z to the central
// fundamental cell and unfolds, with the trigonometric q-expansions truncated
// at series_depth terms.
struct EllipticData {
    Complex omega1, omega2;
    Complex eta1, eta2;
    Complex g2, g3;
    int series_depth = 40;

    // internals
    Complex hw1;        // omega1 / 2
    Complex tau, q2;
    std::vector<Complex> zeta_coeff, wp_coeff, wpp_coeff, q2n;
    double lattice_scale = 1.0;

    struct Reduced {
        Complex z0;
        long long k1, k2;
    };

    Reduced reduce(Complex z) const {
        double det = omega1.real() * omega2.imag() - omega1.imag() * omega2.real();
        double x = (z.real() * omega2.imag() - z.imag() * omega2.real()) / det;
        double y = (omega1.real() * z.imag() - omega1.imag() * z.real()) / det;
        long long k1 = std::llround(x), k2 = std::llround(y);
        return {z - double(k1) * omega1 - double(k2) * omega2, k1, k2};
    }

    bool near_lattice(Complex z, double rel = 1e-9) const {
        return std::abs(reduce(z).z0) < rel * lattice_scale;
    }
};

namespace detail {

inline Complex zeta_cell(const EllipticData& d, Complex z0) {
    Complex v = 3.14159265358979323846 * z0 / (2.0 * d.hw1);
    Complex s{0, 0};
    for (std::size_t n = 1; n < d.zeta_coeff.size(); ++n)
        s += d.zeta_coeff[n] * std::sin(2.0 * double(n) * v);
    return 0.5 * d.eta1 * z0 / d.hw1 +
           3.14159265358979323846 / (2.0 * d.hw1) * std::cos(v) / std::sin(v) +
           6.28318530717958647692 / d.hw1 * s;
}

inline Complex wp_cell(const EllipticData& d, Complex z0) {
    Complex v = 3.14159265358979323846 * z0 / (2.0 * d.hw1);
    Complex sv = std::sin(v);
    Complex s{0, 0};
    for (std::size_t n = 1; n < d.wp_coeff.size(); ++n)
        s += d.wp_coeff[n] * std::cos(2.0 * double(n) * v);
    Complex pref = 3.14159265358979323846 / (2.0 * d.hw1);
    // -eta1h/hw1 + pref^2 csc^2 v - (2 pi^2 / hw1^2) sum, and 2 pi^2/hw1^2 = 8 pref^2
    return -0.5 * d.eta1 / d.hw1 + pref * pref / (sv * sv) - 8.0 * pref * pref * s;
}

inline Complex wpp_cell(const EllipticData& d, Complex z0) {
    Complex v = 3.14159265358979323846 * z0 / (2.0 * d.hw1);
    Complex sv = std::sin(v), cv = std::cos(v);
    Complex s{0, 0};
    for (std::size_t n = 1; n < d.wpp_coeff.size(); ++n)
        s += d.wpp_coeff[n] * std::sin(2.0 * double(n) * v);
    Complex pref = 3.14159265358979323846 / (2.0 * d.hw1);
    // -2 pref^3 csc^2 v cot v + (2 pi^3 / hw1^3) sum, and 2 pi^3/hw1^3 = 16 pref^3
    return -2.0 * pref * pref * pref * cv / (sv * sv * sv) +
           16.0 * pref * pref * pref * s;
}

inline Complex sigma_cell(const EllipticData& d, Complex z0) {
    Complex v = 3.14159265358979323846 * z0 / (2.0 * d.hw1);
    Complex prod{1.0, 0.0};
    Complex c2v = std::cos(2.0 * v);
    for (std::size_t n = 1; n < d.q2n.size(); ++n) {
        Complex qn = d.q2n[n];
        prod *= (1.0 - 2.0 * qn * c2v + qn * qn) / ((1.0 - qn) * (1.0 - qn));
    }
    return 2.0 * d.hw1 / 3.14159265358979323846 *
           std::exp(0.5 * d.eta1 * z0 * z0 / (2.0 * d.hw1)) * std::sin(v) * prod;
}

}  // namespace detail

// Weierstrass p-function.
inline Complex wp(const EllipticData& d, Complex z) {
    if (d.near_lattice(z)) throw LatticePointInput("wp at a lattice point");
    return detail::wp_cell(d, d.reduce(z).z0);
}

inline Complex wp_prime(const EllipticData& d, Complex z) {
    if (d.near_lattice(z)) throw LatticePointInput("wp' at a lattice point");
    return detail::wpp_cell(d, d.reduce(z).z0);
}

inline Complex zeta_w(const EllipticData& d, Complex z) {
    if (d.near_lattice(z)) throw LatticePointInput("zeta at a lattice point");
    auto r = d.reduce(z);
    return detail::zeta_cell(d, r.z0) + double(r.k1) * d.eta1 + double(r.k2) * d.eta2;
}

inline Complex sigma_w(const EllipticData& d, Complex z) {
    auto r = d.reduce(z);
    Complex shift = double(r.k1) * d.omega1 + double(r.k2) * d.omega2;
    Complex eta = double(r.k1) * d.eta1 + double(r.k2) * d.eta2;
    double sign = ((r.k1 + r.k2 + r.k1 * r.k2) % 2 == 0) ? 1.0 : -1.0;
    return sign * detail::sigma_cell(d, r.z0) * std::exp(eta * (r.z0 + 0.5 * shift));
}

inline EllipticData elliptic_from_lattice(Complex omega1, Complex omega2, int depth = 40) {
    EllipticData d;
    Complex tau = omega2 / omega1;
    if (!(std::abs(tau.imag()) > 1e-12))
        throw DegenerateLattice("lattice generators are dependent over the reals");
    if (tau.imag() < 0) std::swap(omega1, omega2), tau = omega2 / omega1;
    d.omega1 = omega1;
    d.omega2 = omega2;
    d.series_depth = depth;
    d.hw1 = omega1 / 2.0;
    d.tau = tau;
    d.q2 = std::exp(Complex{0, 1} * 6.28318530717958647692 * tau);
    d.lattice_scale = std::min(std::abs(omega1), std::abs(omega2));

    const double pi = 3.14159265358979323846;
    d.q2n.assign(static_cast<std::size_t>(depth) + 1, Complex{0, 0});
    d.zeta_coeff.assign(d.q2n.size(), Complex{0, 0});
    d.wp_coeff.assign(d.q2n.size(), Complex{0, 0});
    d.wpp_coeff.assign(d.q2n.size(), Complex{0, 0});
    Complex e2{1.0, 0.0}, e4{1.0, 0.0}, e6{1.0, 0.0};
    Complex qp{1.0, 0.0};
    for (int n = 1; n <= depth; ++n) {
        qp *= d.q2;
        d.q2n[static_cast<std::size_t>(n)] = qp;
        Complex base = qp / (1.0 - qp);
        d.zeta_coeff[static_cast<std::size_t>(n)] = base;
        d.wp_coeff[static_cast<std::size_t>(n)] = double(n) * base;
        d.wpp_coeff[static_cast<std::size_t>(n)] = double(n) * double(n) * base;
        e2 -= 24.0 * double(n) * base;
        e4 += 240.0 * double(n) * double(n) * double(n) * base;
        e6 -= 504.0 * double(n) * double(n) * double(n) * double(n) * double(n) * base;
    }
    // half quasi-period from E2, the other one from the Legendre relation
    Complex eta1_half = pi * pi / (12.0 * d.hw1) * e2;
    Complex hw3 = omega2 / 2.0;
    Complex eta3_half = (eta1_half * hw3 - Complex{0, 1} * pi / 2.0) / d.hw1;
    d.eta1 = 2.0 * eta1_half;
    d.eta2 = 2.0 * eta3_half;
    Complex s1 = pi / d.hw1;
    d.g2 = s1 * s1 * s1 * s1 * e4 / 12.0;
    d.g3 = s1 * s1 * s1 * s1 * s1 * s1 * e6 / 216.0;

    // construction-time invariants: Legendre relation and the differential
    // equation of wp at twenty fixed pseudo-random cell points
    Complex legendre = d.omega1 * d.eta2 - d.omega2 * d.eta1;
    if (std::min(std::abs(legendre - Complex{0, 6.28318530717958647692}),
                 std::abs(legendre + Complex{0, 6.28318530717958647692})) > 1e-8)
        throw Error("Legendre relation failed; increase series_depth");
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(0.2, 0.8);
    for (int i = 0; i < 20; ++i) {
        Complex z = u(rng) * d.omega1 + u(rng) * d.omega2;
        Complex p = detail::wp_cell(d, d.reduce(z).z0);
        Complex pp = detail::wpp_cell(d, d.reduce(z).z0);
        Complex lhs = pp * pp;
        Complex rhs = 4.0 * p * p * p - d.g2 * p - d.g3;
        double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        if (std::abs(lhs - rhs) > 1e-8 * scale)
            throw Error("wp differential equation failed; increase series_depth");
    }
    return d;
}

// Doubly periodic exponential factor e^{omega zeta(z) - eta z} for the
// lattice point omega = p omega1 + q omega2 (eta the matching quasi-period).
inline Complex baker_akhiezer_phi(const EllipticData& d, long long p, long long q,
                                  Complex z) {
    if (d.near_lattice(z)) throw LatticePointInput("baker factor at a lattice point");
    if (p == 0 && q == 0) return {1.0, 0.0};
    Complex omega = double(p) * d.omega1 + double(q) * d.omega2;
    Complex eta = double(p) * d.eta1 + double(q) * d.eta2;
    return std::exp(omega * zeta_w(d, z) - eta * z);
}

// sigma(z - u)/sigma(z) e^{u zeta(z)}: analytic and nonvanishing off the
// lattice and u + lattice, with essential singularities on the lattice.
inline Complex baker_akhiezer_psi(const EllipticData& d, Complex u, Complex z) {
    if (d.near_lattice(u)) throw InputError("u must avoid the lattice");
    if (d.near_lattice(z) || d.near_lattice(z - u))
        throw LatticePointInput("psi evaluated on its singular set");
    return sigma_w(d, z - u) / sigma_w(d, z) * std::exp(u * zeta_w(d, z));
}

// Integrate f'/f along the two translated period paths (offset from the
// lattice by 0.37 (omega1+omega2)/2) and return the integer period pair, both
// raw integrals being within integer_tol of 2 pi i integers.
inline std::pair<int, int> period_vector_of_log_derivative(
    const EllipticData& d, const std::function<Complex(Complex)>& f,
    const Tolerances& tol = {}) {
    AnalyticFn fn = AnalyticFn::from_plain(f);
    Complex z0 = 0.37 * (d.omega1 + d.omega2) / 2.0;
    detail::PhaseTracker tracker{fn, tol, std::log(tol.zero_on_contour)};
    int out[2];
    for (int i = 0; i < 2; ++i) {
        Complex omega = i == 0 ? d.omega1 : d.omega2;
        PathSegment seg;
        seg.map = [z0, omega](double t) { return z0 + t * omega; };
        double darg = tracker.segment(seg, 256);
        double dlog = fn.f(z0 + omega).log_abs() - fn.f(z0).log_abs();
        if (std::abs(dlog) > 1e-6)
            throw Error("log-derivative integral has a nonvanishing real part");
        double raw = darg / 6.28318530717958647692;
        double k = std::round(raw);
        if (std::abs(raw - k) > tol.winding_integer)
            throw NonIntegerWinding("period integral is not an integer multiple of 2 pi i");
        out[i] = static_cast<int>(k);
    }
    return {out[0], out[1]};
}

}  // namespace expzero
