#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "expzero/errors.hpp"

namespace expzero {

using Complex = std::complex<double>;

inline Complex horner(const std::vector<Complex>& coeffs, Complex z) {
    Complex acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

inline Complex horner_deriv(const std::vector<Complex>& coeffs, Complex z) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = coeffs.size(); i-- > 1;)
        acc = acc * z + static_cast<double>(i) * coeffs[i];
    return acc;
}

// All complex roots of sum_k coeffs[k] z^k (ascending order) by Durand-Kerner
// iteration with a Newton polish. Exact zeros at the origin are split off
// first so they come out bit-exact.
inline std::vector<Complex> poly_roots(std::vector<Complex> coeffs,
                                       int max_iter = 1000, double tol = 1e-14) {
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    if (coeffs.size() <= 1) throw InputError("root finding needs a nonconstant polynomial");

    std::vector<Complex> roots;
    while (coeffs.size() > 1 && coeffs.front() == Complex{0.0, 0.0}) {
        roots.emplace_back(0.0, 0.0);
        coeffs.erase(coeffs.begin());
    }
    const std::size_t deg = coeffs.size() - 1;
    if (deg == 0) return roots;
    for (auto& c : coeffs) c /= coeffs.back(), (void)c;
    coeffs.back() = {1.0, 0.0};

    if (deg == 1) {
        roots.push_back(-coeffs[0]);
        return roots;
    }

    double radius = 0.0;
    for (std::size_t i = 0; i + 1 < coeffs.size(); ++i)
        radius = std::max(radius, std::abs(coeffs[i]));
    radius = 1.0 + radius;

    std::vector<Complex> x(deg);
    const Complex seed{0.4, 0.9};
    Complex p{1.0, 0.0};
    for (std::size_t i = 0; i < deg; ++i) {
        p *= seed;
        x[i] = radius * p / std::abs(p) * (0.5 + 0.5 * (double(i) + 1.0) / double(deg));
    }

    for (int it = 0; it < max_iter; ++it) {
        double worst = 0.0;
        for (std::size_t i = 0; i < deg; ++i) {
            Complex num = horner(coeffs, x[i]);
            Complex den{1.0, 0.0};
            for (std::size_t j = 0; j < deg; ++j)
                if (j != i) den *= (x[i] - x[j]);
            if (std::abs(den) < 1e-300) continue;
            Complex delta = num / den;
            x[i] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < tol * std::max(1.0, radius)) break;
    }

    for (auto& r : x) {
        for (int it = 0; it < 40; ++it) {
            Complex d = horner_deriv(coeffs, r);
            if (std::abs(d) < 1e-300) break;
            Complex step = horner(coeffs, r) / d;
            r -= step;
            if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(r))) break;
        }
        roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

}  // namespace expzero
