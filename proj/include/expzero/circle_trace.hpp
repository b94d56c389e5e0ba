#pragma once

#include <cmath>
#include <vector>

#include "expzero/config.hpp"
#include "expzero/analytic_fn.hpp"

namespace expzero {

struct TraceNotReal : Error {
    using Error::Error;
};

// Zeros of phi on the circle |z| = radius for functions whose restriction to
// the circle is real: sign changes of the real trace over t in [0, pi] are
// bisected to 1e-12 in t, then mirrored to [pi, 2pi).
inline std::vector<Complex> circle_trace_bisect(const AnalyticFn& fn, double radius,
                                                bool assume_real,
                                                const Tolerances& tol = {},
                                                int samples = 2048) {
    auto trace = [&](double t) -> Complex {
        return fn.f(std::polar(radius, t)).value();
    };
    std::vector<double> ts(static_cast<std::size_t>(samples) + 1);
    std::vector<Complex> vals(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        ts[i] = 3.14159265358979323846 * double(i) / double(samples);
        vals[i] = trace(ts[i]);
        if (assume_real &&
            std::abs(vals[i].imag()) > tol.trace_imag * std::max(1.0, std::abs(vals[i])))
            throw TraceNotReal("trace has a nonreal sample on the circle");
    }
    if (!assume_real)
        throw InputError("circle_trace_bisect requires assume_real");

    std::vector<Complex> zeros;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        double fa = vals[i].real(), fb = vals[i + 1].real();
        if (fa == 0.0) {
            zeros.push_back(std::polar(radius, ts[i]));
            continue;
        }
        if (fa * fb >= 0.0) continue;
        double a = ts[i], b = ts[i + 1];
        while (b - a > 1e-12) {
            double m = 0.5 * (a + b);
            double fm = trace(m).real();
            if (fm == 0.0) { a = b = m; break; }
            if (fa * fm < 0.0) { b = m; } else { a = m; fa = fm; }
        }
        zeros.push_back(std::polar(radius, 0.5 * (a + b)));
    }
    // mirror interior roots to the lower half circle
    std::size_t found = zeros.size();
    for (std::size_t i = 0; i < found; ++i) {
        double t = std::arg(zeros[i]);
        if (t > 1e-12 && t < 3.14159265358979323846 - 1e-12)
            zeros.push_back(std::conj(zeros[i]));
    }
    return zeros;
}

}  // namespace expzero
