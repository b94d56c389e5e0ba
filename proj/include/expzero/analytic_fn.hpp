#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "expzero/poly.hpp"
#include "expzero/roots_univar.hpp"
#include "expzero/scaled_complex.hpp"

namespace expzero {

// Evaluation at or within clearance of an excluded point.
struct EvalAtExcludedPoint : Error {
    using Error::Error;
};

// Generic analytic function handle used by the contour machinery. Evaluators
// return scaled values so functions like exp(z^2) stay usable on large
// contours.
struct AnalyticFn {
    std::function<ScaledComplex(Complex)> f;
    std::function<ScaledComplex(Complex)> df;
    std::vector<Complex> excluded;

    static AnalyticFn from_plain(std::function<Complex(Complex)> fv,
                                 std::function<Complex(Complex)> dv = nullptr,
                                 std::vector<Complex> excl = {}) {
        AnalyticFn a;
        a.f = [fv = std::move(fv)](Complex z) { return ScaledComplex::from(fv(z)); };
        if (dv) a.df = [dv = std::move(dv)](Complex z) { return ScaledComplex::from(dv(z)); };
        a.excluded = std::move(excl);
        return a;
    }

    double distance_to_excluded(Complex z) const {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& p : excluded) d = std::min(d, std::abs(z - p));
        return d;
    }
};

// One coordinate function of a curve parametrization: a rational function of
// the single variable z with exact coefficients.
struct RationalFunction {
    Poly num{std::vector<std::string>{"z"}, std::vector<bool>{false}};
    Poly den{Poly::constant({"z"}, {false}, ExactScalar(1))};
};

struct CurveParametrization {
    std::vector<RationalFunction> xi;
    std::vector<Complex> extra_excluded;  // user-added points of S
};

namespace detail {

struct CompiledRat {
    std::vector<Complex> num, den, dnum, dden;

    Complex eval_poly(const std::vector<Complex>& c, Complex z) const { return horner(c, z); }

    Complex value(Complex z) const { return horner(num, z) / horner(den, z); }
    Complex deriv(Complex z) const {
        Complex n = horner(num, z), d = horner(den, z);
        Complex dn = horner(dnum, z), dd = horner(dden, z);
        return (dn * d - n * dd) / (d * d);
    }
};

inline std::vector<Complex> compile_univariate(const Poly& p, const NumericValuation& val) {
    std::size_t deg = static_cast<std::size_t>(std::max<std::int64_t>(p.degree_in(0), 0));
    std::vector<Complex> c(deg + 1, Complex{0, 0});
    for (const auto& [k, coef] : p.terms())
        c[static_cast<std::size_t>(k.exps[0])] += val.eval(ExactScalar(coef, k.syms));
    return c;
}

struct CompiledTerm {
    Complex coeff;
    std::vector<std::pair<std::size_t, std::int64_t>> xpow;  // (xi index, exponent)
    std::vector<std::pair<std::size_t, std::int64_t>> hpow;  // (xi index, exponent of e^xi)
};

// F compiled against a fixed valuation: term-list evaluation in log scale.
struct CompiledPoly {
    std::vector<CompiledTerm> terms;

    ScaledComplex eval(const std::vector<Complex>& xi) const {
        ScaledComplex acc;
        for (const auto& t : terms) {
            double scale = 0.0, phase = 0.0;
            bool zero = false;
            for (const auto& [i, e] : t.xpow) {
                double a = std::abs(xi[i]);
                if (a == 0.0) {
                    if (e < 0) throw Error("coordinate vanished under a negative power");
                    zero = true;
                    break;
                }
                scale += double(e) * std::log(a);
                phase += double(e) * std::arg(xi[i]);
            }
            if (zero) continue;
            for (const auto& [i, e] : t.hpow) {
                scale += double(e) * xi[i].real();
                phase += double(e) * xi[i].imag();
            }
            ScaledComplex term;
            term.mant = std::polar(1.0, phase);
            term.logscale = scale;
            acc = acc + term * ScaledComplex::from(t.coeff);
        }
        return acc;
    }
};

inline CompiledPoly compile_surface_poly(const Poly& p, std::size_t n,
                                         const NumericValuation& val) {
    CompiledPoly out;
    for (const auto& [k, coef] : p.terms()) {
        CompiledTerm t;
        t.coeff = val.eval(ExactScalar(coef, k.syms));
        if (t.coeff == Complex{0.0, 0.0}) continue;
        for (std::size_t i = 0; i < n; ++i) {
            if (k.exps[i] != 0) t.xpow.emplace_back(i, k.exps[i]);
            if (k.exps[n + i] != 0) t.hpow.emplace_back(i, k.exps[n + i]);
        }
        out.terms.push_back(std::move(t));
    }
    return out;
}

}  // namespace detail

// Phi(z) = F(xi_1(z), ..., xi_n(z), e^{xi_1(z)}, ..., e^{xi_n(z)}) with exact
// input data and compiled numeric evaluators. The derivative uses the exact
// partials of F and of the rational coordinate functions.
class PhiFunction {
public:
    PhiFunction(Poly f, CurveParametrization param,
                NumericValuation val = NumericValuation::standard(),
                double pole_clearance = 1e-6)
        : f_(std::move(f)), param_(std::move(param)), val_(std::move(val)),
          clearance_(pole_clearance) {
        const std::size_t n = param_.xi.size();
        if (f_.vars().size() != 2 * n)
            throw InputError("F must have 2n variables matching the parametrization");
        val_.require_consistent();

        compiled_f_ = detail::compile_surface_poly(f_, n, val_);
        for (std::size_t i = 0; i < n; ++i) {
            Poly dx = f_.diff(f_.vars()[i]);
            Poly dh = f_.diff(f_.vars()[n + i]);
            partial_x_.push_back(detail::compile_surface_poly(dx, n, val_));
            partial_h_.push_back(detail::compile_surface_poly(dh, n, val_));
        }
        for (const auto& rf : param_.xi) {
            detail::CompiledRat cr;
            cr.num = detail::compile_univariate(rf.num, val_);
            cr.den = detail::compile_univariate(rf.den, val_);
            cr.dnum = detail::compile_univariate(rf.num.diff("z"), val_);
            cr.dden = detail::compile_univariate(rf.den.diff("z"), val_);
            if (cr.den.size() == 1 && std::abs(cr.den[0]) == 0.0)
                throw InputError("zero denominator in parametrization");
            if (cr.den.size() > 1) {
                for (Complex r : poly_roots(cr.den)) {
                    if (std::abs(horner(cr.den, r)) > 1e-10 * std::max(1.0, std::abs(r)))
                        throw Error("denominator root failed verification");
                    excluded_.push_back(r);
                }
            }
            rats_.push_back(std::move(cr));
        }
        for (Complex p : param_.extra_excluded) excluded_.push_back(p);
    }

    const std::vector<Complex>& excluded_points() const { return excluded_; }
    const Poly& surface_poly() const { return f_; }
    const NumericValuation& valuation() const { return val_; }
    std::size_t arity() const { return param_.xi.size(); }

    ScaledComplex eval_scaled(Complex z) const {
        return compiled_f_.eval(coords(z));
    }
    Complex eval(Complex z) const { return eval_scaled(z).value(); }

    ScaledComplex deriv_scaled(Complex z) const {
        std::vector<Complex> xi = coords(z);
        ScaledComplex acc;
        for (std::size_t i = 0; i < rats_.size(); ++i) {
            Complex dxi = rats_[i].deriv(z);
            if (dxi == Complex{0.0, 0.0}) continue;
            ScaledComplex inner = partial_x_[i].eval(xi);
            ScaledComplex hat;  // dF/dXh_i * e^{xi_i}
            hat = partial_h_[i].eval(xi) * ScaledComplex::from_exponent(xi[i]);
            acc = acc + (inner + hat) * ScaledComplex::from(dxi);
        }
        return acc;
    }
    Complex deriv(Complex z) const { return deriv_scaled(z).value(); }

    AnalyticFn fn() const {
        PhiFunction copy = *this;
        auto shared = std::make_shared<PhiFunction>(std::move(copy));
        AnalyticFn a;
        a.f = [shared](Complex z) { return shared->eval_scaled(z); };
        a.df = [shared](Complex z) { return shared->deriv_scaled(z); };
        a.excluded = excluded_;
        return a;
    }

private:
    std::vector<Complex> coords(Complex z) const {
        for (const auto& p : excluded_)
            if (std::abs(z - p) < clearance_)
                throw EvalAtExcludedPoint("evaluation within clearance of an excluded point");
        std::vector<Complex> xi(rats_.size());
        for (std::size_t i = 0; i < rats_.size(); ++i) xi[i] = rats_[i].value(z);
        return xi;
    }

    Poly f_;
    CurveParametrization param_;
    NumericValuation val_;
    double clearance_;
    detail::CompiledPoly compiled_f_;
    std::vector<detail::CompiledPoly> partial_x_, partial_h_;
    std::vector<detail::CompiledRat> rats_;
    std::vector<Complex> excluded_;
};

}  // namespace expzero
