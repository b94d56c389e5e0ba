#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "expzero/roots_univar.hpp"
#include "expzero/surface.hpp"

namespace expzero {

// Constant polynomial viewed as a sum of symbol monomials.
using ConstSum = std::map<SymPowers, GaussRat>;

namespace detail {

inline Poly embed_into(const Poly& p, const std::vector<std::string>& vars,
                       const std::vector<bool>& units) {
    if (p.vars() == vars) return p;
    std::vector<std::size_t> where(p.vars().size());
    for (std::size_t i = 0; i < p.vars().size(); ++i) {
        auto it = std::find(vars.begin(), vars.end(), p.vars()[i]);
        if (it == vars.end()) {
            if (p.involves(i)) throw InputError("variable " + p.vars()[i] + " has no slot");
            where[i] = vars.size();
        } else {
            where[i] = static_cast<std::size_t>(it - vars.begin());
        }
    }
    Poly r(vars, units);
    for (const auto& [k, c] : p.terms()) {
        std::vector<std::int64_t> e(vars.size(), 0);
        for (std::size_t i = 0; i < k.exps.size(); ++i)
            if (k.exps[i] != 0) e[where[i]] = k.exps[i];
        r.add_term(std::move(e), ExactScalar(c, k.syms));
    }
    return r;
}

// Coefficient of the monomial with the given exponent vector, collected over
// all symbol monomials.
inline ConstSum coefficient_at(const Poly& p, const std::vector<std::int64_t>& exps) {
    ConstSum out;
    for (const auto& [k, c] : p.terms())
        if (k.exps == exps) out.emplace(k.syms, c);
    return out;
}

// If num == q * den for a single scalar monomial q, return q. The candidate
// quotients pair the first denominator term against each numerator term.
inline std::optional<ExactScalar> divide_constants(const ConstSum& num, const ConstSum& den) {
    if (den.empty()) return std::nullopt;
    if (num.empty()) return ExactScalar(GaussRat{}, {});
    if (num.size() != den.size()) return std::nullopt;
    const auto& [dsyms, dcoef] = *den.begin();
    for (const auto& [nsyms, ncoef] : num) {
        ExactScalar q = ExactScalar(ncoef, nsyms) / ExactScalar(dcoef, dsyms);
        bool ok = true;
        for (const auto& [ds, dc] : den) {
            ExactScalar expect = q * ExactScalar(dc, ds);
            auto it = num.find(expect.syms);
            if (it == num.end() || it->second != expect.coef) { ok = false; break; }
        }
        if (ok) return q;
    }
    return std::nullopt;
}

inline std::optional<Rational> rational_ratio(const ConstSum& num, const ConstSum& den) {
    auto q = divide_constants(num, den);
    if (!q || !q->syms.empty() || q->coef.im != 0) return std::nullopt;
    return q->coef.re;
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline long long to_ll(const BigInt& b) {
    if (b > kMaxExponent || b < -kMaxExponent) throw InputError("integer out of range");
    return b.convert_to<long long>();
}

// chat = e^c as a tracked scalar: exp of an integer is a power of E, exp of
// an integer multiple of the line symbol C is a power of CHAT, anything else
// gets a fresh symbol.
inline std::pair<ExactScalar, bool> chat_for(const ExactScalar& c) {
    if (c.is_zero()) return {ExactScalar(1), false};
    if (c.is_rational() && c.coef.im == 0 && is_integer(c.coef.re))
        return {ExactScalar::symbol(kSymE, static_cast<int>(to_ll(numerator(c.coef.re)))), false};
    if (c.syms.size() == 1 && c.syms.count(kSymC) && c.syms.at(kSymC) == 1 &&
        c.coef.im == 0 && is_integer(c.coef.re))
        return {ExactScalar::symbol(kSymCHat, static_cast<int>(to_ll(numerator(c.coef.re)))), false};
    std::string name = "CHAT1";
    while (c.syms.count(name)) name += "_";
    return {ExactScalar::symbol(name), true};
}

}  // namespace detail

// Recognize F0 as a line m1 X1 + m2 X2 = c with coprime integers m1, m2.
// The Bezout pair is canonical: |a1| minimal, ties broken by a1 >= 0.
// Returns nothing when F0 is not such a line (higher degree, or the
// coefficient ratio is not rational).
inline std::optional<LineSpec> detect_rational_slope(const Poly& f0_in) {
    Poly f0 = detail::embed_into(f0_in, kSurfaceVars, kSurfaceUnits);
    if (f0.involves(2) || f0.involves(3))
        throw InputError("line candidate involves hat variables");
    if (f0.is_constant()) throw InputError("line candidate is constant");
    if (f0.total_degree() != 1) return std::nullopt;

    ConstSum alpha = detail::coefficient_at(f0, {1, 0, 0, 0});
    ConstSum beta = detail::coefficient_at(f0, {0, 1, 0, 0});
    ConstSum delta = detail::coefficient_at(f0, {0, 0, 0, 0});
    ConstSum gamma;  // c-side constant: F0 = alpha X1 + beta X2 - gamma
    for (const auto& [s, v] : delta) gamma.emplace(s, -v);

    LineSpec line;
    std::optional<ExactScalar> c;
    if (alpha.empty()) {
        line.m1 = 0; line.m2 = 1; line.a1 = 0; line.a2 = 1;
        c = detail::divide_constants(gamma, beta);
    } else if (beta.empty()) {
        line.m1 = 1; line.m2 = 0; line.a1 = 1; line.a2 = 0;
        c = detail::divide_constants(gamma, alpha);
    } else {
        auto q = detail::rational_ratio(beta, alpha);
        if (!q) return std::nullopt;
        BigInt r = denominator(*q), p = numerator(*q);
        line.m1 = detail::to_ll(r);
        line.m2 = detail::to_ll(p);
        ConstSum scaled;  // m1 * gamma
        for (const auto& [s, v] : gamma)
            scaled.emplace(s, v * GaussRat{Rational(line.m1), Rational(0)});
        c = detail::divide_constants(scaled, alpha);
        // minimal-|a1| Bezout pair: a1 varies over a10 + t*m2
        long long a10;
        {   // extended Euclid for m1 a + m2 b = gcd
            long long r0 = line.m1, r1 = line.m2, s0 = 1, s1 = 0;
            while (r1 != 0) {
                long long qq = r0 / r1;
                long long r2 = r0 - qq * r1; r0 = r1; r1 = r2;
                long long s2 = s0 - qq * s1; s0 = s1; s1 = s2;
            }
            a10 = (r0 < 0) ? -s0 : s0;
        }
        long long M = std::llabs(line.m2);
        long long rem = ((a10 % M) + M) % M;
        long long cand1 = rem, cand2 = rem - M;
        line.a1 = (std::llabs(cand1) < std::llabs(cand2)) ? cand1
                 : (std::llabs(cand2) < std::llabs(cand1)) ? cand2
                 : std::max(cand1, cand2);
        line.a2 = (1 - line.a1 * line.m1) / line.m2;
    }
    if (!c) throw InputError("line constant is not representable as a tracked scalar");
    line.c = *c;
    auto [chat, fresh] = detail::chat_for(line.c);
    line.chat = chat;
    line.chat_fresh = fresh;
    line.validate();
    return line;
}

// The four substitution polynomials of the line parametrization:
//   X1 = a1 c + m2 Y,   X2 = a2 c - m1 Y,
//   Xh1 = chat^a1 Yh^m2, Xh2 = chat^a2 Yh^-m1.
inline std::vector<Poly> line_images(const LineSpec& line) {
    Poly y = Poly::variable(kReducedVars, kReducedUnits, "Y");
    Poly im1 = Poly::constant(kReducedVars, kReducedUnits,
                              ExactScalar(line.a1) * line.c) + ExactScalar(line.m2) * y;
    Poly im2 = Poly::constant(kReducedVars, kReducedUnits,
                              ExactScalar(line.a2) * line.c) - ExactScalar(line.m1) * y;
    Poly im3 = Poly::zero(kReducedVars, kReducedUnits);
    im3.add_term({0, line.m2}, line.chat.pow(static_cast<int>(line.a1)));
    Poly im4 = Poly::zero(kReducedVars, kReducedUnits);
    im4.add_term({0, -line.m1}, line.chat.pow(static_cast<int>(line.a2)));
    return {im1, im2, im3, im4};
}

// Substitute the line parametrization into F, clear Yh powers and divide out
// scalar content. The result is the canonical reduced curve G(Y, Yh).
inline BackSubResult back_substitute(const Poly& f_in, const LineSpec& line) {
    BackSubResult out;
    out.line = line;
    out.images = line_images(line);
    Poly f = detail::embed_into(f_in, kSurfaceVars, kSurfaceUnits);
    Poly g = f.substitute(out.images);
    out.removed_content = ExactScalar::one();
    if (!g.is_zero()) {
        std::int64_t mn = g.min_exponent_in(1);
        if (mn != 0) {
            g = g.shifted(1, -mn);
            out.clearing_exponent = -mn;
        }
        out.removed_content = g.make_primitive();
    }
    out.g_reduced = g;
    return out;
}

// Points of a reduction whose curve G = h(Y) does not involve Yh: each root y
// of h gives (z1, z2) through the line parametrization, paired with the
// residual of F at (z1, z2, e^z1, e^z2). Points are flagged heuristic when a
// numeric symbol valuation entered the root computation.
inline std::vector<SolvedPoint> resolve_d31_points(const BackSubResult& bsr, const Poly& f_in,
                                                   NumericValuation val,
                                                   double residual_tol = 1e-9) {
    const Poly& h = bsr.g_reduced;
    if (h.is_constant() || h.involves(1))
        throw InputError("reduction is not a polynomial in Y alone");
    Poly f = detail::embed_into(f_in, kSurfaceVars, kSurfaceUnits);

    bool symbolic = false;
    for (const auto& [k, c] : h.terms())
        if (!k.syms.empty()) symbolic = true;
    if (!bsr.line.c.is_rational()) symbolic = true;

    // derive a value for a tracked chat symbol when possible
    if (!bsr.line.chat.syms.empty()) {
        const std::string& name = bsr.line.chat.syms.begin()->first;
        if (!val.has(name)) val.values[name] = std::exp(val.eval(bsr.line.c));
    }

    std::int64_t deg = h.degree_in(0);
    std::vector<Complex> coeffs(static_cast<std::size_t>(deg) + 1, Complex{0, 0});
    for (const auto& [k, c] : h.terms())
        coeffs[static_cast<std::size_t>(k.exps[0])] += val.eval(ExactScalar(c, k.syms));

    std::vector<SolvedPoint> points;
    Complex cval = val.eval(bsr.line.c);
    for (Complex y : poly_roots(coeffs)) {
        SolvedPoint p;
        p.z1 = static_cast<double>(bsr.line.a1) * cval + static_cast<double>(bsr.line.m2) * y;
        p.z2 = static_cast<double>(bsr.line.a2) * cval - static_cast<double>(bsr.line.m1) * y;
        p.residual = std::abs(f.eval({p.z1, p.z2, std::exp(p.z1), std::exp(p.z2)}, val));
        p.heuristic = symbolic;
        points.push_back(p);
    }
    std::sort(points.begin(), points.end(), [](const SolvedPoint& a, const SolvedPoint& b) {
        if (a.z1.real() != b.z1.real()) return a.z1.real() < b.z1.real();
        return a.z1.imag() < b.z1.imag();
    });
    for (const auto& p : points)
        if (!(p.residual < residual_tol))
            throw Error("resolved point fails its residual bound");
    return points;
}

namespace detail {

inline std::optional<ExactScalar> extract_fixed_value(const Poly& gen, std::size_t var) {
    // generator of shape alpha * X_var + delta involving only X_var
    for (std::size_t i = 0; i < gen.vars().size(); ++i)
        if (i != var && gen.involves(i)) return std::nullopt;
    if (gen.degree_in(var) != 1) return std::nullopt;
    std::vector<std::int64_t> e(gen.vars().size(), 0);
    e[var] = 1;
    ConstSum alpha = coefficient_at(gen, e);
    ConstSum delta = coefficient_at(gen, std::vector<std::int64_t>(gen.vars().size(), 0));
    ConstSum minus_delta;
    for (const auto& [s, v] : delta) minus_delta.emplace(s, -v);
    return divide_constants(minus_delta, alpha);
}

inline ClassificationResult unsupported(const std::string& why) {
    ClassificationResult r;
    r.case_label = CaseLabel::Unsupported;
    r.verdict = Verdict::Unknown;
    r.note = why;
    return r;
}

}  // namespace detail

// Decision tree over the surface classification. The structural decisions
// (which case applies) are exact; a supplied numeric valuation can only
// override a constant-versus-zero comparison, and doing so is flagged.
inline ClassificationResult classify_surface(const SurfaceSpec& spec) {
    ClassificationResult out;

    if (spec.kind == SurfaceKind::PointFiber) {
        std::array<std::optional<ExactScalar>, 2> p;
        for (const auto& gen_raw : spec.generators) {
            Poly gen = detail::embed_into(gen_raw, kSurfaceVars, kSurfaceUnits);
            for (std::size_t v : {std::size_t{0}, std::size_t{1}})
                if (!p[v]) {
                    auto val = detail::extract_fixed_value(gen, v);
                    if (val) p[v] = val;
                }
        }
        if (!p[0] || !p[1])
            return detail::unsupported("point_fiber requires explicit X1 = p1 and X2 = p2");
        out.case_label = CaseLabel::A;
        out.verdict = Verdict::SinglePoint;
        out.projection_point = {*p[0], *p[1]};
        return out;
    }

    if (spec.kind == SurfaceKind::FullProjection) {
        for (const auto& gen_raw : spec.generators) {
            Poly gen = detail::embed_into(gen_raw, kSurfaceVars, kSurfaceUnits);
            if (gen.involves(0) || gen.involves(1))
                throw InputError("full_projection generators must involve only hat variables");
        }
        out.case_label = CaseLabel::B;
        out.verdict = Verdict::InfiniteDense;
        return out;
    }

    if (spec.generators.size() < 2)
        throw InputError("curve_pair needs generators F0 and F");
    Poly f0 = detail::embed_into(spec.generators[0], kSurfaceVars, kSurfaceUnits);
    Poly f = detail::embed_into(spec.generators[1], kSurfaceVars, kSurfaceUnits);
    if (f0.is_constant() || (!f0.involves(0) && !f0.involves(1)))
        throw InputError("F0 must be a nonconstant polynomial in X1, X2");
    if (f0.involves(2) || f0.involves(3))
        throw InputError("F0 must not involve hat variables");
    if (!f.involves(2) && !f.involves(3))
        throw InputError("F must involve a hat variable");

    std::optional<LineSpec> line;
    try {
        line = detect_rational_slope(f0);
    } catch (const InputError& e) {
        return detail::unsupported(e.what());
    }
    if (!line) {
        out.case_label = CaseLabel::C;
        out.verdict = Verdict::InfiniteDense;
        return out;
    }

    // Reduced-presentation check: F must not become a single hat-monomial
    // relation once the line is substituted into its X coordinates.
    {
        std::vector<std::string> vars{"Y", "Xh1", "Xh2"};
        std::vector<bool> units{false, true, true};
        Poly y = Poly::variable(vars, units, "Y");
        Poly im1 = Poly::constant(vars, units, ExactScalar(line->a1) * line->c) +
                   ExactScalar(line->m2) * y;
        Poly im2 = Poly::constant(vars, units, ExactScalar(line->a2) * line->c) -
                   ExactScalar(line->m1) * y;
        Poly red = f.substitute({im1, im2, Poly::variable(vars, units, "Xh1"),
                                 Poly::variable(vars, units, "Xh2")});
        std::set<std::pair<std::int64_t, std::int64_t>> hat_exps;
        for (const auto& [k, c] : red.terms()) hat_exps.insert({k.exps[1], k.exps[2]});
        if (hat_exps.size() <= 1)
            return detail::unsupported(
                "F reduces to a single hat-monomial relation over the line; "
                "the pair does not present a surface in reduced form");
    }

    BackSubResult bsr = back_substitute(f, *line);
    out.backsub = bsr;

    if (bsr.g_reduced.is_zero()) {
        out.case_label = CaseLabel::D2;
        out.verdict = Verdict::InfiniteDense;
        return out;
    }
    if (bsr.g_reduced.is_constant()) {
        // exactly nonzero by symbol independence
        out.case_label = CaseLabel::D1;
        out.verdict = Verdict::Empty;
        if (spec.valuation) {
            std::complex<double> g = bsr.g_reduced.eval({{0, 0}, {1, 0}}, *spec.valuation);
            if (std::abs(g) <= spec.valuation->consistency_tol) {
                out.case_label = CaseLabel::D2;
                out.verdict = Verdict::InfiniteDense;
                out.heuristic_flags.push_back("constant-vs-zero decided numerically");
            }
        }
        return out;
    }
    if (!bsr.g_reduced.involves(1)) {
        out.case_label = CaseLabel::D31;
        out.verdict = Verdict::NonemptyFinite;
        NumericValuation val = spec.valuation ? *spec.valuation : NumericValuation::standard();
        out.points = resolve_d31_points(bsr, f, val);
        for (const auto& p : out.points)
            if (p.heuristic) {
                out.heuristic_flags.push_back("d31 roots used a numeric symbol valuation");
                break;
            }
        return out;
    }
    out.case_label = CaseLabel::D32;
    out.verdict = Verdict::InfiniteDense;
    return out;
}

}  // namespace expzero
