#pragma once

#include <chrono>
#include <random>
#include <sstream>

#include "expzero/catalog.hpp"
#include "expzero/circle_trace.hpp"
#include "expzero/classify.hpp"
#include "expzero/elliptic.hpp"
#include "expzero/isolate.hpp"
#include "expzero/laurent.hpp"

namespace expzero {

// One entry of the verification suite: the canonical worked examples with
// their published values, each pinned to an explicit tolerance.
struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct CheckConfig {
    std::string only;          // empty = run everything
    double tol_override = 0;   // > 0 replaces the per-criterion match tolerances
    Tolerances tolerances;
};

namespace checks {

struct Ctx {
    const CheckConfig& cfg;
    double match(double dflt) const { return cfg.tol_override > 0 ? cfg.tol_override : dflt; }
};

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Unit-circle pair of e^z + e^(1/z) = 1 to published digits, under a second.
inline CriterionResult unit_circle_pair(const Ctx& c) {
    CriterionResult r;
    r.name = "unit_circle_pair";
    const double tol = c.match(1e-9);
    PhiFunction phi = catalog::phi_exp_reciprocal();
    AnalyticFn fn = phi.fn();
    auto zeros = circle_trace_bisect(fn, 1.0, true, c.cfg.tolerances);
    bool ok = zeros.size() == 2;
    double worst = 0.0;
    for (Complex z : zeros) {
        NewtonOutcome n = newton_refine(fn, z, c.cfg.tolerances);
        ok = ok && n.converged;
        if (!n.converged) continue;
        worst = std::max(worst, std::abs(n.z.real() - (-0.08285557733006468)));
        worst = std::max(worst, std::abs(std::abs(n.z.imag()) - 0.9965615652358371));
    }
    r.pass = ok && worst < tol;
    r.detail = "max digit deviation " + fmt(worst);
    return r;
}

// Opposite signs of the trace at t = 0 and t = pi.
inline CriterionResult sign_change(const Ctx& c) {
    CriterionResult r;
    r.name = "sign_change";
    const double tol = c.match(1e-12);
    PhiFunction phi = catalog::phi_exp_reciprocal();
    double e = std::exp(1.0);
    Complex a = phi.eval({1.0, 0.0});
    Complex b = phi.eval({-1.0, 0.0});
    double da = std::abs(a - (2 * e - 1)) / (2 * e - 1);
    double db = std::abs(b - (2 / e - 1)) / std::abs(2 / e - 1);
    r.pass = da < tol && db < tol && a.real() > 0 && b.real() < 0;
    r.detail = "phi(1) rel err " + fmt(da) + ", phi(-1) rel err " + fmt(db);
    return r;
}

// A second conjugate pair in 7 <= |z| <= 8, certified within thirty seconds.
inline CriterionResult far_pair(const Ctx& c) {
    CriterionResult r;
    r.name = "far_pair";
    const double tol = c.match(1e-9);
    PhiFunction phi = catalog::phi_exp_reciprocal();
    IsolationResult res =
        isolate_zeros(phi.fn(), Contour::annulus({0, 0}, 7.0, 8.0), 8, c.cfg.tolerances);
    int good = 0;
    double worst = 0.0;
    for (const auto& cert : res.certificates)
        for (const auto& root : cert.roots) {
            worst = std::max(worst, root.residual);
            if (root.residual < tol) ++good;
        }
    r.pass = good >= 2;
    r.detail = std::to_string(good) + " certificates, worst residual " + fmt(worst);
    return r;
}

// Winding consistency around the essential singularity.
inline CriterionResult winding_consistency(const Ctx& c) {
    CriterionResult r;
    r.name = "winding";
    PhiFunction phi = catalog::phi_exp_reciprocal();
    AnalyticFn fn = phi.fn();
    int w2 = winding_number(fn, Contour::circle({0, 0}, 2.0), c.cfg.tolerances);
    int w05 = winding_number(fn, Contour::circle({0, 0}, 0.5), c.cfg.tolerances);
    bool raised = false;
    try {
        winding_number(fn, Contour::circle({0, 0}, 1.0), c.cfg.tolerances);
    } catch (const ZeroOnContour&) {
        raised = true;
    }
    int ann = count_zeros(fn, Contour::annulus({0, 0}, 0.5, 2.0), c.cfg.tolerances);
    bool ceiling = std::abs(w2) <= 62 && std::abs(w05) <= 62;
    r.pass = w2 == 1 && raised && (w2 - w05) == ann && ann == 2 && ceiling;
    r.detail = "w(2)=" + std::to_string(w2) + " w(0.5)=" + std::to_string(w05) +
               " zero-on-contour=" + (raised ? "raised" : "missed") +
               " annulus count=" + std::to_string(ann);
    return r;
}

// The six canned surfaces land on (a, b, c, d1, d2, d31) with exact data.
inline CriterionResult classifier_table(const Ctx& c) {
    CriterionResult r;
    r.name = "classifier_table";
    const double tol = c.match(1e-12);
    std::vector<std::pair<SurfaceSpec, CaseLabel>> table;
    table.emplace_back(catalog::point_surface(), CaseLabel::A);
    table.emplace_back(catalog::full_projection_surface(), CaseLabel::B);
    table.emplace_back(catalog::hyperbola_surface(), CaseLabel::C);
    table.emplace_back(catalog::no_solution_surface(), CaseLabel::D1);
    table.emplace_back(catalog::subgroup_surface(), CaseLabel::D2);
    table.emplace_back(catalog::single_point_surface(), CaseLabel::D31);
    bool ok = true;
    std::string got;
    for (const auto& [spec, expected] : table) {
        ClassificationResult res = classify_surface(spec);
        got += to_string(res.case_label) + " ";
        ok = ok && res.case_label == expected && res.heuristic_flags.empty();
        if (res.case_label == CaseLabel::D31) {
            ok = ok && res.points.size() == 1 && std::abs(res.points[0].z1) < tol &&
                 std::abs(res.points[0].z2 - 1.0) < tol && res.points[0].residual < tol;
        }
    }
    ClassificationResult variant = classify_surface(catalog::two_point_surface());
    ok = ok && variant.case_label == CaseLabel::D31 && variant.points.size() == 2 &&
         variant.heuristic_flags.empty() &&
         std::abs(variant.points[0].z1) < tol && std::abs(variant.points[0].z2 - 1.0) < tol &&
         std::abs(variant.points[1].z1 - 1.0) < tol && std::abs(variant.points[1].z2) < tol;
    r.pass = ok;
    r.detail = "cases: " + got + "+ variant with " + std::to_string(variant.points.size()) +
               " points";
    return r;
}

// Reduction of the product surface to its one-variable normal form is exact
// and byte-stable.
inline CriterionResult backsub_regression(const Ctx&) {
    CriterionResult r;
    r.name = "backsub_regression";
    ClassificationResult a = classify_surface(catalog::product_surface());
    ClassificationResult b = classify_surface(catalog::product_surface());
    bool ok = a.case_label == CaseLabel::D32 && a.backsub.has_value();
    std::string ja = classification_to_json(a).dump();
    std::string jb = classification_to_json(b).dump();
    ok = ok && ja == jb;
    ok = ok && a.backsub->g_reduced == catalog::reduced_product_curve();
    r.pass = ok;
    r.detail = ok ? "normal form matched byte-for-byte" : "normal form mismatch";
    return r;
}

// Taylor data of e^z - z from circle samples, against the growth bound.
inline CriterionResult laurent_taylor(const Ctx& c) {
    CriterionResult r;
    r.name = "laurent_taylor";
    const double tol = c.match(1e-8);
    PhiFunction phi = catalog::phi_exp_minus_z();
    LaurentProfile p = laurent_profile(phi.fn(), {0, 0}, 0.5, 4, c.cfg.tolerances);
    double a1 = std::abs(p.coeffs.at(1));
    double a2 = std::abs(p.coeffs.at(2) - 0.5);
    double bound = a2_growth_bound(17.0);
    r.pass = p.m == 0 && a1 < tol && a2 < tol && bound < 0.5;
    r.detail = "m=" + std::to_string(p.m) + " |a1|=" + fmt(a1) + " |a2-1/2|=" + fmt(a2) +
               " bound(17)=" + fmt(bound);
    return r;
}

// Winding counts equal planted-root counts on one hundred random instances.
inline CriterionResult oracle_equivalence(const Ctx& c) {
    CriterionResult r;
    r.name = "oracle_equivalence";
    std::mt19937_64 rng(c.cfg.tolerances.seed);
    std::uniform_int_distribution<int> numd(-128, 128), degd(1, 8);
    std::uniform_real_distribution<double> rectd(-2.5, 2.5);
    int trials = 0, matched = 0;
    while (trials < 100) {
        int deg = degd(rng);
        std::vector<Complex> roots;
        std::vector<std::string> vars{"X1", "Xh1"};
        std::vector<bool> units{false, true};
        Poly f = Poly::constant(vars, units, ExactScalar(1));
        Poly x = Poly::variable(vars, units, "X1");
        for (int i = 0; i < deg; ++i) {
            GaussRat root{Rational(numd(rng), 64), Rational(numd(rng), 64)};
            roots.emplace_back(rational_to_double(root.re), rational_to_double(root.im));
            f = f * (x - Poly::constant(vars, units, ExactScalar(root)));
        }
        CurveParametrization param;
        param.xi = {catalog::rf_z()};
        PhiFunction phi(f, param);
        AnalyticFn fn = phi.fn();

        double x1 = rectd(rng), x2 = rectd(rng), y1 = rectd(rng), y2 = rectd(rng);
        if (x2 < x1) std::swap(x1, x2);
        if (y2 < y1) std::swap(y1, y2);
        if (x2 - x1 < 0.1 || y2 - y1 < 0.1) continue;
        bool clean = true;
        int expected = 0;
        for (const auto& root : roots) {
            double dx = std::min(std::abs(root.real() - x1), std::abs(root.real() - x2));
            double dy = std::min(std::abs(root.imag() - y1), std::abs(root.imag() - y2));
            if (std::min(dx, dy) < 1e-3) { clean = false; break; }
            if (root.real() > x1 && root.real() < x2 && root.imag() > y1 &&
                root.imag() < y2)
                ++expected;
        }
        if (!clean) continue;
        ++trials;
        if (count_zeros(fn, Contour::rect(x1, y1, x2, y2), c.cfg.tolerances) == expected)
            ++matched;
    }
    r.pass = matched == 100;
    r.detail = std::to_string(matched) + "/100 exact matches";
    return r;
}

// Elliptic identity block: Legendre, double periodicity, the half-period
// identity and the period vectors of the two exponential factors.
inline CriterionResult elliptic_identities(const Ctx& c) {
    CriterionResult r;
    r.name = "elliptic";
    const double tol = c.match(1e-8);
    EllipticData d = elliptic_from_lattice({2, 0}, {0.5, 1.8}, 60);
    const double two_pi = 6.283185307179586476925287;
    Complex leg = d.omega1 * d.eta2 - d.omega2 * d.eta1;
    double leg_err = std::min(std::abs(leg - Complex{0, two_pi}),
                              std::abs(leg + Complex{0, two_pi}));
    bool ok = leg_err < tol;

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.15, 0.85);
    double per_err = 0.0, half_err = 0.0;
    Complex hp = d.omega1 / 2.0;
    Complex e1 = wp(d, hp);
    Complex su = sigma_w(d, hp);
    for (int i = 0; i < 20; ++i) {
        Complex z = u(rng) * d.omega1 + u(rng) * d.omega2;
        Complex base = baker_akhiezer_phi(d, 1, 0, z);
        per_err = std::max(per_err,
                           std::abs(baker_akhiezer_phi(d, 1, 0, z + d.omega1) / base - 1.0));
        per_err = std::max(per_err,
                           std::abs(baker_akhiezer_phi(d, 1, 0, z + d.omega2) / base - 1.0));
        if (std::abs(z - hp) > 0.15) {
            Complex lhs = wp(d, z) - e1;
            Complex psi = baker_akhiezer_psi(d, hp, z);
            Complex rhs = psi * psi / (su * su * baker_akhiezer_phi(d, 1, 0, z));
            half_err = std::max(half_err,
                                std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
    }
    ok = ok && per_err < tol && half_err < tol;

    auto p1 = period_vector_of_log_derivative(
        d, [&](Complex z) { return baker_akhiezer_phi(d, 1, 0, z); }, c.cfg.tolerances);
    auto p2 = period_vector_of_log_derivative(
        d, [&](Complex z) { return baker_akhiezer_phi(d, 0, 1, z); }, c.cfg.tolerances);
    ok = ok && p1.first == 0 && std::abs(p1.second) == 1 && std::abs(p2.first) == 1 &&
         p2.second == 0;

    r.pass = ok;
    r.detail = "legendre " + fmt(leg_err) + ", periodicity " + fmt(per_err) +
               ", half-period " + fmt(half_err) + ", vectors (" + std::to_string(p1.first) +
               "," + std::to_string(p1.second) + ")/(" + std::to_string(p2.first) + "," +
               std::to_string(p2.second) + ")";
    return r;
}

// Newton behavior from the two mirrored seeds of e^z + e^(z^2) = 1.
inline CriterionResult newton_chaos(const Ctx& c) {
    CriterionResult r;
    r.name = "newton_chaos";
    const double tol = c.match(1e-9);
    PhiFunction phi = catalog::phi_exp_square();
    AnalyticFn fn = phi.fn();
    double s = std::sqrt(100.0 * M_PI);
    NewtonOutcome plus = newton_refine(fn, Complex{s, s}, c.cfg.tolerances);
    NewtonOutcome minus = newton_refine(fn, Complex{-s, -s}, c.cfg.tolerances);
    bool plus_clean = plus.iters <= c.cfg.tolerances.newton_max_iter &&
                      (!plus.converged || plus.residual < tol);
    r.pass = minus.converged && minus.residual < tol && plus_clean;
    r.detail = std::string("+seed ") +
               (plus.converged ? "converged in " + std::to_string(plus.iters) + " iterations"
                               : "downgraded after " + std::to_string(plus.iters)) +
               "; -seed converged in " + std::to_string(minus.iters) +
               " iterations, residual " + fmt(minus.residual);
    return r;
}

}  // namespace checks

inline std::vector<CriterionResult> run_paper_checks(const CheckConfig& cfg) {
    checks::Ctx ctx{cfg};
    struct Entry {
        const char* name;
        CriterionResult (*fn)(const checks::Ctx&);
        double time_limit;  // seconds; 0 = none
    };
    static const Entry entries[] = {
        {"unit_circle_pair", checks::unit_circle_pair, 1.0},
        {"sign_change", checks::sign_change, 0.0},
        {"far_pair", checks::far_pair, 30.0},
        {"winding", checks::winding_consistency, 0.0},
        {"classifier_table", checks::classifier_table, 0.0},
        {"backsub_regression", checks::backsub_regression, 0.0},
        {"laurent_taylor", checks::laurent_taylor, 0.0},
        {"oracle_equivalence", checks::oracle_equivalence, 60.0},
        {"elliptic", checks::elliptic_identities, 0.0},
        {"newton_chaos", checks::newton_chaos, 0.0},
    };
    std::vector<CriterionResult> out;
    for (const auto& e : entries) {
        if (!cfg.only.empty() && cfg.only != e.name) continue;
        CriterionResult r;
        auto t0 = std::chrono::steady_clock::now();
        try {
            r = e.fn(ctx);
        } catch (const std::exception& ex) {
            r.name = e.name;
            r.pass = false;
            r.detail = std::string("exception: ") + ex.what();
        }
        r.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (e.time_limit > 0 && r.seconds >= e.time_limit) {
            r.pass = false;
            r.detail += "; exceeded " + checks::fmt(e.time_limit) + "s budget";
        }
        out.push_back(std::move(r));
    }
    if (!cfg.only.empty() && out.empty())
        throw InputError("no criterion named " + cfg.only);
    return out;
}

inline Json paper_checks_to_json(const std::vector<CriterionResult>& results) {
    Json arr = Json::array();
    bool all = true;
    for (const auto& r : results) {
        arr.push_back(Json{{"name", r.name},
                           {"pass", r.pass},
                           {"detail", r.detail},
                           {"seconds", r.seconds}});
        all = all && r.pass;
    }
    return Json{{"criteria", arr}, {"all_pass", all}};
}

}  // namespace expzero
