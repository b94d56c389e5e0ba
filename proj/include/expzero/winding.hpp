#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "expzero/config.hpp"
#include "expzero/contour.hpp"

namespace expzero {

// A boundary sample fell below the zero-on-contour tolerance; the winding
// integral is meaningless there.
struct ZeroOnContour : Error {
    Complex where;
    double abs_value;
    ZeroOnContour(Complex z, double a)
        : Error("|phi| below tolerance on the contour"), where(z), abs_value(a) {}
};

// Adaptive refinement bottomed out without the phase steps settling.
struct NonIntegerWinding : Error {
    using Error::Error;
};

namespace detail {

inline double wrapped_arg_delta(const ScaledComplex& from, const ScaledComplex& to) {
    double d = to.arg() - from.arg();
    while (d > 3.14159265358979323846) d -= 6.28318530717958647692;
    while (d < -3.14159265358979323846) d += 6.28318530717958647692;
    return d;
}

struct PhaseTracker {
    const AnalyticFn& fn;
    const Tolerances& tol;
    double log_floor;

    ScaledComplex eval(Complex z) const {
        ScaledComplex v = fn.f(z);
        if (v.log_abs() < log_floor) throw ZeroOnContour(z, std::exp(v.log_abs()));
        return v;
    }

    // Continuous-argument variation along map([t0,t1]) by step halving. A
    // step is accepted only if its endpoints and its midpoint agree on a
    // small phase and magnitude change; otherwise it splits.
    double delta(const std::function<Complex(double)>& map, double t0, double t1,
                 const ScaledComplex& f0, const ScaledComplex& f1, int depth) const {
        double step = wrapped_arg_delta(f0, f1);
        double dlog = f1.log_abs() - f0.log_abs();
        double tm = 0.5 * (t0 + t1);
        if (depth > 52 || tm <= t0 || tm >= t1) {
            // cannot refine further; decide why
            ScaledComplex fm = fn.f(map(tm));
            if (fm.log_abs() < log_floor) throw ZeroOnContour(map(tm), std::exp(fm.log_abs()));
            throw NonIntegerWinding("phase tracking failed to settle");
        }
        ScaledComplex fm = eval(map(tm));
        if (std::abs(step) < 1.5707963267948966 && std::abs(dlog) < 0.7) {
            double s1 = wrapped_arg_delta(f0, fm);
            double s2 = wrapped_arg_delta(fm, f1);
            if (std::abs(s1) < 1.5707963267948966 && std::abs(s2) < 1.5707963267948966 &&
                std::abs(s1 + s2 - step) < 1e-9)
                return s1 + s2;
        }
        return delta(map, t0, tm, f0, fm, depth + 1) + delta(map, tm, t1, fm, f1, depth + 1);
    }

    double segment(const PathSegment& seg, int initial_samples) const {
        int n = std::max(4, initial_samples);
        std::vector<ScaledComplex> vals(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i)
            vals[static_cast<std::size_t>(i)] =
                eval(seg.map(seg.t0 + (seg.t1 - seg.t0) * double(i) / double(n)));
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double a = seg.t0 + (seg.t1 - seg.t0) * double(i) / double(n);
            double b = seg.t0 + (seg.t1 - seg.t0) * double(i + 1) / double(n);
            total += delta(seg.map, a, b, vals[static_cast<std::size_t>(i)],
                           vals[static_cast<std::size_t>(i + 1)], 0);
        }
        return total;
    }
};

inline double loop_phase(const AnalyticFn& fn, const std::vector<PathSegment>& segs,
                         const Tolerances& tol, int initial_samples) {
    PhaseTracker tracker{fn, tol, std::log(tol.zero_on_contour)};
    double total = 0.0;
    for (const auto& s : segs) total += tracker.segment(s, initial_samples);
    return total;
}

inline int phase_to_integer(double total, const Tolerances& tol) {
    double raw = total / 6.28318530717958647692;
    double nearest = std::round(raw);
    if (std::abs(raw - nearest) > tol.winding_integer)
        throw NonIntegerWinding("winding quadrature did not converge to an integer");
    return static_cast<int>(nearest);
}

inline std::uint64_t mix_bits(std::uint64_t h, double v) {
    std::uint64_t x = std::bit_cast<std::uint64_t>(v);
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

inline std::uint64_t contour_seed(const Contour& c, std::uint64_t seed) {
    std::uint64_t h = seed;
    h = mix_bits(h, double(static_cast<int>(c.kind)));
    h = mix_bits(h, c.center.real());
    h = mix_bits(h, c.center.imag());
    h = mix_bits(h, c.r1);
    h = mix_bits(h, c.r2);
    h = mix_bits(h, c.x1);
    h = mix_bits(h, c.y1);
    h = mix_bits(h, c.x2);
    h = mix_bits(h, c.y2);
    return h;
}

inline double jitter_factor(std::uint64_t seed, int attempt, double scale) {
    if (attempt == 0) return 1.0;
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt);
    x ^= x >> 33; x *= 0xff51afd7ed558ccdULL; x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL; x ^= x >> 33;
    double u = double(x >> 11) / 9007199254740992.0;  // [0,1)
    return 1.0 + scale * (2.0 * u - 1.0);
}

}  // namespace detail

// Winding number (1/2pi) Delta arg phi around the contour. The raw quadrature
// must land within tol.winding_integer of an integer.
inline int winding_number(const AnalyticFn& fn, const Contour& contour,
                          const Tolerances& tol = {}, int initial_samples = -1) {
    contour.require_boundary_clear(fn.excluded, tol.clearance);
    int n = initial_samples > 0 ? initial_samples : contour.sampling;
    switch (contour.kind) {
        case Contour::Kind::Circle:
            return detail::phase_to_integer(
                detail::loop_phase(fn, circle_segments(contour.center, contour.r2), tol, n),
                tol);
        case Contour::Kind::Rect:
            return detail::phase_to_integer(
                detail::loop_phase(fn, rect_segments(contour.x1, contour.y1, contour.x2,
                                                     contour.y2),
                                   tol, std::max(4, n / 4)),
                tol);
        case Contour::Kind::Annulus: {
            int outer = detail::phase_to_integer(
                detail::loop_phase(fn, circle_segments(contour.center, contour.r2), tol, n),
                tol);
            int inner = detail::phase_to_integer(
                detail::loop_phase(fn, circle_segments(contour.center, contour.r1), tol, n),
                tol);
            return outer - inner;
        }
    }
    throw Error("unreachable");
}

// Zeros enclosed by the contour, counted with multiplicity. On a
// ZeroOnContour error the boundary is jittered by seeded factors
// 1 +- jitter_scale * u and retried.
inline int count_zeros(const AnalyticFn& fn, const Contour& region,
                       const Tolerances& tol = {}, int initial_samples = -1) {
    region.require_region_clear(fn.excluded, tol.clearance);
    std::uint64_t seed = detail::contour_seed(region, tol.seed);
    for (int attempt = 0; attempt <= tol.jitter_retries; ++attempt) {
        Contour c = region;
        double u = detail::jitter_factor(seed, attempt, tol.jitter_scale);
        double v = detail::jitter_factor(seed ^ 0x5bd1e995, attempt, tol.jitter_scale);
        switch (region.kind) {
            case Contour::Kind::Circle: c.r2 *= u; break;
            case Contour::Kind::Annulus: c.r1 *= u; c.r2 *= v; break;
            case Contour::Kind::Rect: {
                double w = (region.x2 - region.x1) * 0.5, h = (region.y2 - region.y1) * 0.5;
                c.x1 -= w * (u - 1.0); c.x2 += w * (v - 1.0);
                c.y1 -= h * (v - 1.0); c.y2 += h * (u - 1.0);
                break;
            }
        }
        try {
            return winding_number(fn, c, tol, initial_samples);
        } catch (const ZeroOnContour&) {
            if (attempt == tol.jitter_retries) throw;
        }
    }
    throw Error("unreachable");
}

}  // namespace expzero
