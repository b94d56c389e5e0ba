// expzero command line: surface classification, zero location by the
// argument principle, Laurent/winding diagnostics, elliptic verification and
// the bundled verification suite. All outputs are JSON on stdout; identical
// configuration (including --seed) yields byte-identical output.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "expzero/catalog.hpp"
#include "expzero/classify.hpp"
#include "expzero/elliptic.hpp"
#include "expzero/isolate.hpp"
#include "expzero/laurent.hpp"
#include "expzero/paper_checks.hpp"
#include "expzero/svg.hpp"

using namespace expzero;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;      // computation ran, result is negative
constexpr int kExitBadInput = 2;     // malformed input, region or flags
constexpr int kExitUnsupported = 3;  // classify: shape out of scope
constexpr int kExitHeuristic = 4;    // classify: numeric valuation was decisive

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError(std::string("JSON parse error: ") + e.what());
    }
    return j;
}

std::vector<std::string> region_tokens(const std::vector<std::string>& raw) {
    std::vector<std::string> tokens;
    for (const auto& chunk : raw) {
        std::istringstream is(chunk);
        std::string t;
        while (is >> t) tokens.push_back(t);
    }
    return tokens;
}

Contour parse_region(const std::vector<std::string>& raw) {
    auto tokens = region_tokens(raw);
    if (tokens.empty()) throw InputError("missing --region");
    auto num = [&](std::size_t i) {
        try {
            return std::stod(tokens.at(i));
        } catch (const std::exception&) {
            throw InputError("bad region number '" + tokens.at(i) + "'");
        }
    };
    const std::string& kind = tokens[0];
    if (kind == "disc" && tokens.size() == 4)
        return Contour::circle({num(1), num(2)}, num(3));
    if (kind == "annulus" && tokens.size() == 5)
        return Contour::annulus({num(1), num(2)}, num(3), num(4));
    if (kind == "rect" && tokens.size() == 5)
        return Contour::rect(num(1), num(2), num(3), num(4));
    throw InputError("region must be 'disc cx cy r', 'annulus cx cy r1 r2' or "
                     "'rect x1 y1 x2 y2'");
}

NumericValuation valuation_from_json(const Json& j) {
    NumericValuation v = NumericValuation::standard();
    if (j.contains("valuation")) {
        for (const auto& [name, val] : j.at("valuation").items())
            v.values[name] = {val.at(0).get<double>(), val.at(1).get<double>()};
        v.require_consistent();
    }
    return v;
}

PhiFunction load_problem(const Json& j) {
    Poly f = poly_from_json(j.at("F"));
    CurveParametrization param;
    for (const auto& x : j.at("xi")) {
        RationalFunction rf;
        rf.num = poly_from_json(x.at("num"));
        if (x.contains("den")) rf.den = poly_from_json(x.at("den"));
        else rf.den = Poly::constant(rf.num.vars(), rf.num.unit_flags(), ExactScalar(1));
        param.xi.push_back(std::move(rf));
    }
    if (j.contains("excluded"))
        for (const auto& p : j.at("excluded"))
            param.extra_excluded.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return PhiFunction(f, param, valuation_from_json(j));
}

std::uint64_t parse_seed(const std::string& s) {
    std::string t = s;
    if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0) t = t.substr(2);
    try {
        return std::stoull(t, nullptr, 16);
    } catch (const std::exception&) {
        throw InputError("bad --seed '" + s + "' (hex expected)");
    }
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

struct CommonOpts {
    std::string input;
    std::vector<std::string> region;
    double tol = 0.0;
    int max_zeros = 64;
    std::string seed = "0x5EED";
    std::string emit_svg;
    int laurent_k = 8;

    Tolerances tolerances() const {
        Tolerances t;
        if (tol < 0.0) throw InputError("--tol must be positive");
        if (tol > 0.0) t.residual = tol;
        if (max_zeros <= 0) throw InputError("--max-zeros must be positive");
        t.seed = parse_seed(seed);
        t.threads = Tolerances::env_threads();
        return t;
    }
};

int cmd_classify(const CommonOpts& opt) {
    SurfaceSpec spec = surface_from_json(load_json(opt.input));
    ClassificationResult res = classify_surface(spec);
    emit(classification_to_json(res));
    if (res.case_label == CaseLabel::Unsupported) return kExitUnsupported;
    if (!res.heuristic_flags.empty()) return kExitHeuristic;
    return kExitOk;
}

int cmd_solve(const CommonOpts& opt) {
    PhiFunction phi = load_problem(load_json(opt.input));
    Contour region = parse_region(opt.region);
    Tolerances tol = opt.tolerances();
    IsolationResult res = isolate_zeros(phi.fn(), region, opt.max_zeros, tol);
    Json certs = Json::array();
    for (const auto& c : res.certificates) certs.push_back(certificate_to_json(c));
    emit(Json{{"region_count", res.region_count},
              {"isolated", res.isolated()},
              {"truncated", res.truncated},
              {"cells_used", res.cells_used},
              {"certificates", certs}});
    if (!opt.emit_svg.empty())
        write_region_svg(opt.emit_svg, region, res.certificates, phi.excluded_points());
    return res.isolated() >= 1 ? kExitOk : kExitFailure;
}

int cmd_winding(const CommonOpts& opt) {
    PhiFunction phi = load_problem(load_json(opt.input));
    Contour region = parse_region(opt.region);
    Tolerances tol = opt.tolerances();
    int m = winding_number(phi.fn(), region, tol);
    emit(Json{{"winding", m}});
    if (!opt.emit_svg.empty())
        write_region_svg(opt.emit_svg, region, {}, phi.excluded_points());
    return kExitOk;
}

int cmd_laurent(const CommonOpts& opt) {
    PhiFunction phi = load_problem(load_json(opt.input));
    Contour region = parse_region(opt.region);
    if (region.kind != Contour::Kind::Circle)
        throw InputError("laurent needs --region disc cx cy r (center and radius)");
    Tolerances tol = opt.tolerances();
    LaurentProfile p = laurent_profile(phi.fn(), region.center, region.r2, opt.laurent_k, tol);
    Json coeffs = Json::object();
    for (const auto& [k, a] : p.coeffs)
        coeffs[std::to_string(k)] = Json::array({a.real(), a.imag()});
    emit(Json{{"m", p.m},
              {"center", Json::array({p.center.real(), p.center.imag()})},
              {"radius", p.radius},
              {"samples", p.samples},
              {"coeffs", coeffs},
              {"reconstruction_error", p.reconstruction_error},
              {"bound", Json{{"R", p.bound_R}, {"value", p.bound_value}}}});
    if (!opt.emit_svg.empty())
        write_region_svg(opt.emit_svg, region, {}, phi.excluded_points());
    return kExitOk;
}

int cmd_elliptic_verify(const CommonOpts& opt) {
    Complex w1{2.0, 0.0}, w2{0.5, 1.8};
    int depth = 60;
    if (!opt.input.empty()) {
        Json j = load_json(opt.input);
        w1 = {j.at("omega1").at(0).get<double>(), j.at("omega1").at(1).get<double>()};
        w2 = {j.at("omega2").at(0).get<double>(), j.at("omega2").at(1).get<double>()};
        if (j.contains("depth")) depth = j.at("depth").get<int>();
    }
    EllipticData d = elliptic_from_lattice(w1, w2, depth);
    Tolerances tol = opt.tolerances();

    const double two_pi = 6.283185307179586476925287;
    Complex leg = d.omega1 * d.eta2 - d.omega2 * d.eta1;
    double legendre_err = std::min(std::abs(leg - Complex{0, two_pi}),
                                   std::abs(leg + Complex{0, two_pi}));

    std::mt19937_64 rng(tol.seed);
    std::uniform_real_distribution<double> u(0.15, 0.85);
    double ode = 0, quasi = 0, periodicity = 0, half = 0, sigma_zero = 0;
    Complex hp = d.omega1 / 2.0;
    Complex e1 = wp(d, hp);
    Complex su = sigma_w(d, hp);
    for (int i = 0; i < 20; ++i) {
        Complex z = u(rng) * d.omega1 + u(rng) * d.omega2;
        Complex p = wp(d, z), pp = wp_prime(d, z);
        Complex rhs = 4.0 * p * p * p - d.g2 * p - d.g3;
        ode = std::max(ode, std::abs(pp * pp - rhs) / std::max(1.0, std::abs(rhs)));
        quasi = std::max(quasi, std::abs(zeta_w(d, z + d.omega1) - zeta_w(d, z) - d.eta1));
        quasi = std::max(quasi, std::abs(zeta_w(d, z + d.omega2) - zeta_w(d, z) - d.eta2));
        Complex base = baker_akhiezer_phi(d, 1, 0, z);
        periodicity = std::max(periodicity,
                               std::abs(baker_akhiezer_phi(d, 1, 0, z + d.omega2) / base - 1.0));
        if (std::abs(z - hp) > 0.15 * std::abs(d.omega1)) {
            Complex lhs = wp(d, z) - e1;
            Complex psi = baker_akhiezer_psi(d, hp, z);
            half = std::max(half, std::abs(lhs - psi * psi /
                                                     (su * su * baker_akhiezer_phi(d, 1, 0, z))) /
                                      std::max(1.0, std::abs(lhs)));
        }
    }
    sigma_zero = std::abs(sigma_w(d, Complex{1e-8, 0}) / Complex{1e-8, 0} - 1.0);

    auto p1 = period_vector_of_log_derivative(
        d, [&](Complex z) { return baker_akhiezer_phi(d, 1, 0, z); }, tol);
    auto p2 = period_vector_of_log_derivative(
        d, [&](Complex z) { return baker_akhiezer_phi(d, 0, 1, z); }, tol);

    bool pass = legendre_err < 1e-8 && ode < 1e-8 && quasi < 1e-8 && periodicity < 1e-8 &&
                half < 1e-8 && sigma_zero < 1e-6 && p1.first == 0 &&
                std::abs(p1.second) == 1 && std::abs(p2.first) == 1 && p2.second == 0;

    emit(Json{{"omega1", Json::array({d.omega1.real(), d.omega1.imag()})},
              {"omega2", Json::array({d.omega2.real(), d.omega2.imag()})},
              {"g2", Json::array({d.g2.real(), d.g2.imag()})},
              {"g3", Json::array({d.g3.real(), d.g3.imag()})},
              {"depth", d.series_depth},
              {"residuals",
               Json{{"legendre", legendre_err},
                    {"wp_ode", ode},
                    {"zeta_quasi_period", quasi},
                    {"baker_phi_periodicity", periodicity},
                    {"half_period_identity", half},
                    {"sigma_origin", sigma_zero}}},
              {"period_vectors",
               Json{{"phi1", Json::array({p1.first, p1.second})},
                    {"phi2", Json::array({p2.first, p2.second})}}},
              {"all_pass", pass}});
    return pass ? kExitOk : kExitFailure;
}

int cmd_verify_paper(const CommonOpts& opt, const std::string& only) {
    CheckConfig cfg;
    cfg.only = only;
    cfg.tol_override = opt.tol;
    cfg.tolerances = opt.tolerances();
    auto results = run_paper_checks(cfg);
    emit(paper_checks_to_json(results));
    for (const auto& r : results)
        if (!r.pass) return kExitFailure;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"expzero: exponential points on algebraic surfaces - classification, "
                 "argument-principle zero location, Laurent diagnostics and elliptic checks"};
    app.require_subcommand(1);

    CommonOpts opt;
    std::string only;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        auto* in = sub->add_option("--input", opt.input, "input JSON path");
        if (needs_input) in->required();
        sub->add_option("--region", opt.region,
                        "region: 'disc cx cy r' | 'annulus cx cy r1 r2' | 'rect x1 y1 x2 y2'");
        sub->add_option("--tol", opt.tol, "override the residual/match tolerance");
        sub->add_option("--max-zeros", opt.max_zeros, "certificate cap for solve");
        sub->add_option("--seed", opt.seed, "hex seed for boundary jitter");
        sub->add_option("--emit-svg", opt.emit_svg, "write an SVG picture to this path");
        sub->add_option("--laurent-k", opt.laurent_k, "Laurent truncation order");
    };

    auto* classify = app.add_subcommand("classify", "classify a surface specification");
    add_common(classify, true);
    auto* solve = app.add_subcommand("solve", "count and isolate zeros in a region");
    add_common(solve, true);
    auto* winding = app.add_subcommand("winding", "winding number over a contour");
    add_common(winding, true);
    auto* laurent = app.add_subcommand("laurent", "Laurent profile on a sampling circle");
    add_common(laurent, true);
    auto* ell = app.add_subcommand("elliptic-verify", "verify the elliptic identity battery");
    add_common(ell, false);
    auto* verify = app.add_subcommand("verify-paper", "run the bundled verification suite");
    add_common(verify, false);
    verify->add_option("--only", only, "run a single named criterion");

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) return cmd_classify(opt);
        if (solve->parsed()) return cmd_solve(opt);
        if (winding->parsed()) return cmd_winding(opt);
        if (laurent->parsed()) return cmd_laurent(opt);
        if (ell->parsed()) return cmd_elliptic_verify(opt);
        if (verify->parsed()) return cmd_verify_paper(opt, only);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const ValuationError& e) {
        std::cerr << "valuation error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitBadInput;
}
