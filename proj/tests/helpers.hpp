#pragma once

#include <complex>
#include <random>
#include <vector>

#include "expzero/poly.hpp"

namespace tst {

using expzero::ExactScalar;
using expzero::GaussRat;
using expzero::Poly;
using expzero::Rational;

// Standard surface space: X1, X2 polynomial vars; Xh1, Xh2 units.
inline Poly surface_space() {
    return Poly::zero({"X1", "X2", "Xh1", "Xh2"}, {false, false, true, true});
}
inline Poly surface_var(const std::string& name) {
    return Poly::variable({"X1", "X2", "Xh1", "Xh2"}, {false, false, true, true}, name);
}
inline Poly surface_const(long n) {
    return Poly::constant({"X1", "X2", "Xh1", "Xh2"}, {false, false, true, true},
                          ExactScalar(n));
}
inline Poly surface_const(const ExactScalar& s) {
    return Poly::constant({"X1", "X2", "Xh1", "Xh2"}, {false, false, true, true}, s);
}

// Reduced space: Y polynomial, Yh unit.
inline Poly reduced_var(const std::string& name) {
    return Poly::variable({"Y", "Yh"}, {false, true}, name);
}
inline Poly reduced_const(const ExactScalar& s) {
    return Poly::constant({"Y", "Yh"}, {false, true}, s);
}

inline GaussRat grat(long re_num, long re_den, long im_num = 0, long im_den = 1) {
    return GaussRat{Rational(re_num, re_den), Rational(im_num, im_den)};
}

struct RandomPoly {
    std::mt19937_64 rng;
    explicit RandomPoly(std::uint64_t seed) : rng(seed) {}

    Poly operator()() {
        Poly p = surface_space();
        std::uniform_int_distribution<int> nterms(1, 6), expo(0, 3), uexpo(-3, 3),
            num(-9, 9), den(1, 9), symp(0, 2);
        int n = nterms(rng);
        for (int t = 0; t < n; ++t) {
            std::vector<std::int64_t> e{expo(rng), expo(rng), uexpo(rng), uexpo(rng)};
            ExactScalar s(GaussRat{Rational(num(rng), den(rng)), Rational(num(rng), den(rng))});
            if (s.is_zero()) continue;
            int pe = symp(rng);
            if (pe != 0) s.syms["E"] = pe;
            p.add_term(std::move(e), s);
        }
        return p;
    }

    std::complex<double> point() {
        std::uniform_real_distribution<double> u(-1.5, 1.5);
        return {u(rng), u(rng)};
    }

    std::complex<double> unit_point() {
        std::uniform_real_distribution<double> r(0.3, 1.8), t(0.0, 6.28318);
        return std::polar(r(rng), t(rng));
    }
};

}  // namespace tst
