#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "expzero/isolate.hpp"
#include "analytic_helpers.hpp"

using namespace expzero;
using namespace tst;

namespace {
const Tolerances kTol;

// Values recomputed by the grid-Newton oracle below; the closed-form pair of
// e^z = z fixed points doubles as a cross-check via z e^{-z} = 1.
constexpr double kExpRootRe = 0.3181315052047641;
constexpr double kExpRootIm = 1.3372357014306895;
}

TEST_CASE("zero counts match the grid-Newton oracle for e^z - z") {
    auto f = [](Complex z) { return std::exp(z) - z; };
    auto df = [](Complex z) { return std::exp(z) - 1.0; };
    auto oracle = grid_newton_roots(f, df, -4.0, -4.0, 4.0, 4.0, 0.25);
    std::size_t inside = 0;
    for (const auto& r : oracle)
        if (std::abs(r) <= 4.0) ++inside;
    CHECK(inside == 2);

    PhiFunction phi = phi_exp_minus_z();
    CHECK(count_zeros(phi.fn(), Contour::circle({0, 0}, 4.0), kTol) == 2);
}

TEST_CASE("isolation of the e^z = z fixed points") {
    PhiFunction phi = phi_exp_minus_z();
    IsolationResult res = isolate_zeros(phi.fn(), Contour::circle({0, 0}, 2.0), 8, kTol);
    CHECK(res.region_count == 2);
    REQUIRE(res.isolated() == 2);
    for (const auto& cert : res.certificates) {
        REQUIRE(cert.roots.size() == 1);
        const auto& r = cert.roots[0];
        CHECK(r.residual < kTol.residual);
        CHECK(cert.box.contains_strict(r.z));
        CHECK(std::abs(r.z.real() - kExpRootRe) < 1e-10);
        CHECK(std::abs(std::abs(r.z.imag()) - kExpRootIm) < 1e-10);
        // cross-check: fixed points of e^z satisfy z e^{-z} = 1
        CHECK(std::abs(r.z * std::exp(-r.z) - 1.0) < 1e-12);
    }
}

TEST_CASE("the reciprocal surface pair on the unit circle is isolated") {
    PhiFunction phi = phi_exp_reciprocal();
    IsolationResult res = isolate_zeros(phi.fn(), Contour::annulus({0, 0}, 0.9, 1.1), 8, kTol);
    CHECK(res.region_count == 2);
    REQUIRE(res.isolated() == 2);
    std::vector<Complex> roots;
    for (const auto& cert : res.certificates)
        for (const auto& r : cert.roots) roots.push_back(r.z);
    REQUIRE(roots.size() == 2);
    // conjugate configuration
    CHECK(std::abs(roots[0] - std::conj(roots[1])) < 1e-10);
    for (const auto& z : roots) {
        CHECK(std::abs(z.real() - (-0.08285557733006468)) < 1e-9);
        CHECK(std::abs(std::abs(z.imag()) - 0.9965615652358371) < 1e-9);
    }
}

TEST_CASE("a second conjugate pair lives in the 7..8 annulus") {
    PhiFunction phi = phi_exp_reciprocal();
    IsolationResult res = isolate_zeros(phi.fn(), Contour::annulus({0, 0}, 7.0, 8.0), 8, kTol);
    CHECK(res.region_count == 2);
    REQUIRE(res.isolated() >= 2);
    for (const auto& cert : res.certificates) {
        for (const auto& r : cert.roots) {
            CHECK(r.residual < kTol.residual);
            double mod = std::abs(r.z);
            CHECK(mod > 7.0);
            CHECK(mod < 8.0);
        }
    }
}

TEST_CASE("oracle equivalence on planted-root polynomials") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> numd(-128, 128), degd(1, 8);
    std::uniform_real_distribution<double> rectd(-2.5, 2.5);

    for (int trial = 0; trial < 100; ++trial) {
        int deg = degd(rng);
        std::vector<Complex> roots;
        std::vector<std::string> vars{"X1", "Xh1"};
        std::vector<bool> units{false, true};
        Poly f = Poly::constant(vars, units, ExactScalar(1));
        Poly x = Poly::variable(vars, units, "X1");
        for (int i = 0; i < deg; ++i) {
            GaussRat r{Rational(numd(rng), 64), Rational(numd(rng), 64)};
            roots.emplace_back(rational_to_double(r.re), rational_to_double(r.im));
            f = f * (x - Poly::constant(vars, units, ExactScalar(r)));
        }
        CurveParametrization param;
        param.xi = {rf_z()};
        PhiFunction phi(f, param);
        AnalyticFn fn = phi.fn();

        for (int rect_trial = 0; rect_trial < 50; ++rect_trial) {
            double x1 = rectd(rng), x2 = rectd(rng), y1 = rectd(rng), y2 = rectd(rng);
            if (x2 < x1) std::swap(x1, x2);
            if (y2 < y1) std::swap(y1, y2);
            if (x2 - x1 < 0.1 || y2 - y1 < 0.1) continue;
            bool clean = true;
            int expected = 0;
            for (const auto& r : roots) {
                double dx = std::min(std::abs(r.real() - x1), std::abs(r.real() - x2));
                double dy = std::min(std::abs(r.imag() - y1), std::abs(r.imag() - y2));
                if (std::min(dx, dy) < 1e-3) { clean = false; break; }
                if (r.real() > x1 && r.real() < x2 && r.imag() > y1 && r.imag() < y2)
                    ++expected;
            }
            if (!clean) continue;
            CHECK(count_zeros(fn, Contour::rect(x1, y1, x2, y2), kTol) == expected);
            break;
        }
    }
}

TEST_CASE("Newton behavior from the two canonical seeds of e^z + e^(z^2) = 1") {
    PhiFunction phi = phi_exp_square();
    AnalyticFn fn = phi.fn();
    double s = std::sqrt(100.0 * M_PI);

    NewtonOutcome good = newton_refine(fn, Complex{-s, -s}, kTol);
    CHECK(good.converged);
    CHECK(good.residual < 1e-9);

    // the mirrored seed historically wanders; it must either converge within
    // the iteration budget or stop cleanly, never crash
    NewtonOutcome wild = newton_refine(fn, Complex{s, s}, kTol);
    CHECK(wild.iters <= kTol.newton_max_iter);
    if (wild.converged) CHECK(wild.residual < 1e-9);
}

TEST_CASE("the reduced EX curve has zeros as an n=1 problem") {
    PhiFunction phi = phi_reduced_ex();
    double e = std::exp(1.0);
    CHECK(std::abs(phi.eval({0.0, 0.0}) - (1.0 + e)) < 1e-12 * (1 + e));
    IsolationResult res = isolate_zeros(phi.fn(), Contour::circle({0, 0}, 6.0), 8, kTol);
    CHECK(res.region_count == 4);
    CHECK(res.isolated() >= 1);
    for (const auto& cert : res.certificates)
        for (const auto& r : cert.roots) CHECK(r.residual < kTol.residual);
}

TEST_CASE("best-first isolation truncates at max_zeros on busy regions") {
    PhiFunction phi = phi_exp_square();
    IsolationResult res = isolate_zeros(phi.fn(), Contour::circle({0, 0}, 30.0), 6, kTol);
    CHECK(res.isolated() >= 6);
    CHECK(res.truncated);
    CHECK(res.cells_used <= kTol.cell_budget);
    for (const auto& cert : res.certificates)
        for (const auto& r : cert.roots) CHECK(r.residual < kTol.residual);
}

TEST_CASE("deterministic certificates independent of thread count") {
    PhiFunction phi = phi_exp_minus_z();
    Tolerances t1 = kTol;
    Tolerances t4 = kTol;
    t4.threads = 4;
    IsolationResult a = isolate_zeros(phi.fn(), Contour::circle({0, 0}, 4.0), 8, t1);
    IsolationResult b = isolate_zeros(phi.fn(), Contour::circle({0, 0}, 4.0), 8, t4);
    REQUIRE(a.certificates.size() == b.certificates.size());
    for (std::size_t i = 0; i < a.certificates.size(); ++i) {
        Json ja = certificate_to_json(a.certificates[i]);
        Json jb = certificate_to_json(b.certificates[i]);
        CHECK(ja.dump() == jb.dump());
    }
}
