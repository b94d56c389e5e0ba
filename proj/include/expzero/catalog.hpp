#pragma once

#include "expzero/analytic_fn.hpp"
#include "expzero/surface.hpp"

namespace expzero::catalog {

inline Poly svar(const std::string& name) {
    return Poly::variable(kSurfaceVars, kSurfaceUnits, name);
}
inline Poly sconst(const ExactScalar& s) {
    return Poly::constant(kSurfaceVars, kSurfaceUnits, s);
}
inline Poly sconst(long n) { return sconst(ExactScalar(n)); }

inline Poly line_x1_plus_x2() { return svar("X1") + svar("X2") - sconst(1); }

// X1 = 0, X2 = 0: the projection is a single point.
inline SurfaceSpec point_surface() {
    SurfaceSpec s;
    s.kind = SurfaceKind::PointFiber;
    s.generators = {svar("X1"), svar("X2")};
    return s;
}

// Xh1 = 1, Xh2 = 1: the projection is all of C^2.
inline SurfaceSpec full_projection_surface() {
    SurfaceSpec s;
    s.kind = SurfaceKind::FullProjection;
    s.generators = {svar("Xh1") - sconst(1), svar("Xh2") - sconst(1)};
    return s;
}

inline SurfaceSpec curve_pair(Poly f0, Poly f) {
    SurfaceSpec s;
    s.kind = SurfaceKind::CurvePair;
    s.generators = {std::move(f0), std::move(f)};
    return s;
}

// X1 X2 = 1, Xh1 Xh2 = 1: projection curve of irrational slope.
inline SurfaceSpec hyperbola_surface() {
    return curve_pair(svar("X1") * svar("X2") - sconst(1),
                      svar("Xh1") * svar("Xh2") - sconst(1));
}

// X1 + X2 = 1, Xh1 Xh2 = 1: no exponential points at all.
inline SurfaceSpec no_solution_surface() {
    return curve_pair(line_x1_plus_x2(), svar("Xh1") * svar("Xh2") - sconst(1));
}

// X1 + X2 = 1, Xh1 Xh2 = e: the whole translated subgroup.
inline SurfaceSpec subgroup_surface() {
    return curve_pair(line_x1_plus_x2(),
                      svar("Xh1") * svar("Xh2") - sconst(ExactScalar::symbol(kSymE)));
}

// X1 + X2 = 1, X1 + Xh1 Xh2 = e: exactly one exponential point (0,1,1,e).
inline SurfaceSpec single_point_surface() {
    return curve_pair(line_x1_plus_x2(), svar("X1") - sconst(ExactScalar::symbol(kSymE)) +
                                             svar("Xh1") * svar("Xh2"));
}

// X1 - X1^2 + Xh1 Xh2 = e over the same line: two exponential points.
inline SurfaceSpec two_point_surface() {
    Poly x1 = svar("X1");
    return curve_pair(line_x1_plus_x2(), x1 - x1 * x1 -
                                             sconst(ExactScalar::symbol(kSymE)) +
                                             svar("Xh1") * svar("Xh2"));
}

// X1 + X2 = 1, X1 X2 = Xh1 + Xh2: reduces to the one-variable curve
// Yh^2 + e = Y Yh (1 - Y).
inline SurfaceSpec product_surface() {
    return curve_pair(line_x1_plus_x2(),
                      svar("X1") * svar("X2") - svar("Xh1") - svar("Xh2"));
}

// X1^9 + X2^9 = 1, Xh1 + Xh2 = 1: a degree-9 projection curve.
inline SurfaceSpec degree_nine_surface() {
    return curve_pair(svar("X1").pow(9) + svar("X2").pow(9) - sconst(1),
                      svar("Xh1") + svar("Xh2") - sconst(1));
}

// The reduced normal form of product_surface: Yh^2 + E - Y Yh + Y^2 Yh.
inline Poly reduced_product_curve() {
    Poly y = Poly::variable(kReducedVars, kReducedUnits, "Y");
    Poly yh = Poly::variable(kReducedVars, kReducedUnits, "Yh");
    return yh * yh + Poly::constant(kReducedVars, kReducedUnits, ExactScalar::symbol(kSymE)) -
           y * yh + y * y * yh;
}

inline RationalFunction rf_z() {
    RationalFunction r;
    r.num = Poly::variable({"z"}, {false}, "z");
    return r;
}
inline RationalFunction rf_z_squared() {
    RationalFunction r;
    Poly z = Poly::variable({"z"}, {false}, "z");
    r.num = z * z;
    return r;
}
inline RationalFunction rf_one_over_z() {
    RationalFunction r;
    r.num = Poly::constant({"z"}, {false}, ExactScalar(1));
    r.den = Poly::variable({"z"}, {false}, "z");
    return r;
}

// Phi(z) = e^z + e^(1/z) - 1, from X1 X2 = 1, Xh1 + Xh2 = 1.
inline PhiFunction phi_exp_reciprocal() {
    Poly f = svar("Xh1") + svar("Xh2") - sconst(1);
    CurveParametrization param;
    param.xi = {rf_z(), rf_one_over_z()};
    return PhiFunction(f, param);
}

// Phi(z) = e^z + e^(z^2) - 1, from X2 = X1^2, Xh1 + Xh2 = 1.
inline PhiFunction phi_exp_square() {
    Poly f = svar("Xh1") + svar("Xh2") - sconst(1);
    CurveParametrization param;
    param.xi = {rf_z(), rf_z_squared()};
    return PhiFunction(f, param);
}

// Phi(z) = e^z - z.
inline PhiFunction phi_exp_minus_z() {
    std::vector<std::string> vars{"X1", "Xh1"};
    std::vector<bool> units{false, true};
    Poly f = Poly::variable(vars, units, "Xh1") - Poly::variable(vars, units, "X1");
    CurveParametrization param;
    param.xi = {rf_z()};
    return PhiFunction(f, param);
}

// Phi(z) = e^{2z} + e - z e^z (1 - z): the reduced curve of product_surface
// read as an n = 1 problem.
inline PhiFunction phi_reduced_product() {
    std::vector<std::string> vars{"X1", "Xh1"};
    std::vector<bool> units{false, true};
    Poly x = Poly::variable(vars, units, "X1");
    Poly xh = Poly::variable(vars, units, "Xh1");
    Poly f = xh * xh + Poly::constant(vars, units, ExactScalar::symbol(kSymE)) - x * xh +
             x * x * xh;
    CurveParametrization param;
    param.xi = {rf_z()};
    return PhiFunction(f, param);
}

}  // namespace expzero::catalog
