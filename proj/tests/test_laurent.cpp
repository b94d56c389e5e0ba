#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "expzero/circle_trace.hpp"
#include "expzero/laurent.hpp"
#include "analytic_helpers.hpp"

using namespace expzero;
using namespace tst;
using Catch::Approx;

namespace {
const Tolerances kTol;
}

TEST_CASE("circle trace finds the unit-circle pair") {
    PhiFunction phi = phi_exp_reciprocal();
    AnalyticFn fn = phi.fn();

    double e = std::exp(1.0);
    Complex at0 = fn.f(Complex{1.0, 0.0}).value();
    Complex atpi = fn.f(Complex{-1.0, 0.0}).value();
    CHECK(at0.real() == Approx(2 * e - 1).epsilon(1e-12));
    CHECK(atpi.real() == Approx(2 / e - 1).epsilon(1e-12));
    CHECK(at0.real() * atpi.real() < 0.0);  // a sign change guarantees a zero

    auto zeros = circle_trace_bisect(fn, 1.0, true, kTol);
    REQUIRE(zeros.size() == 2);
    for (const auto& z : zeros) {
        CHECK(std::abs(z.real() - (-0.08285557733006468)) < 1e-9);
        CHECK(std::abs(std::abs(z.imag()) - 0.9965615652358371) < 1e-9);
    }
}

TEST_CASE("circle trace rejects nonreal traces") {
    PhiFunction phi = phi_exp_minus_z();
    CHECK_THROWS_AS(circle_trace_bisect(phi.fn(), 1.0, true, kTol), TraceNotReal);
}

TEST_CASE("Laurent profile of z^2 exp(1/z)") {
    auto fn = AnalyticFn::from_plain(
        [](Complex z) { return z * z * std::exp(1.0 / z); },
        [](Complex z) { return (2.0 * z - 1.0) * std::exp(1.0 / z); }, {Complex{0, 0}});
    LaurentProfile p = laurent_profile(fn, {0, 0}, 1.0, 5, kTol);
    CHECK(p.m == 2);
    CHECK(std::abs(p.coeffs.at(-1) - 1.0) < 1e-10);
    for (int k = -5; k <= 5; ++k) {
        if (k == -1) continue;
        CHECK(std::abs(p.coeffs.at(k)) < 1e-10);
    }
    CHECK(p.reconstruction_error < 1e-6);
}

TEST_CASE("Laurent profile of a pure exponential") {
    auto fn = AnalyticFn::from_plain(
        [](Complex z) { return std::exp(0.5 * z + 0.25); },
        [](Complex z) { return 0.5 * std::exp(0.5 * z + 0.25); });
    LaurentProfile p = laurent_profile(fn, {0, 0}, 3.0, 4, kTol);
    CHECK(p.m == 0);
    CHECK(std::abs(p.coeffs.at(0) - 0.25) < 1e-10);
    CHECK(std::abs(p.coeffs.at(1) - 0.5) < 1e-10);
    for (int k : {-4, -3, -2, -1, 2, 3, 4}) CHECK(std::abs(p.coeffs.at(k)) < 1e-10);
    CHECK(p.reconstruction_error < 1e-6);
}

TEST_CASE("Laurent profile of e^z - z reproduces the Taylor data") {
    PhiFunction phi = phi_exp_minus_z();
    // the nearest zero sits at |z| = 1.374, so at radius 0.5 a depth-12
    // truncation reconstructs well below the 1e-6 bar
    LaurentProfile p = laurent_profile(phi.fn(), {0, 0}, 0.5, 12, kTol);
    CHECK(p.m == 0);
    CHECK(std::abs(p.coeffs.at(0)) < 1e-8);
    CHECK(std::abs(p.coeffs.at(1)) < 1e-8);
    CHECK(std::abs(p.coeffs.at(2) - 0.5) < 1e-8);
    CHECK(std::abs(p.coeffs.at(3) - 1.0 / 6.0) < 1e-8);
    CHECK(p.reconstruction_error < 1e-6);

    // growth bound: at R = 17 the Cauchy estimate dips below 1/2, which is
    // incompatible with a_2 = 1/2
    double bound = a2_growth_bound(17.0);
    CHECK(bound == Approx(0.47058825477617067).epsilon(1e-12));
    CHECK(bound < 0.5);
    CHECK(a2_growth_bound(700.0) > 0.0);  // overflow-free for large R
}

TEST_CASE("Laurent profile refuses annuli containing zeros") {
    PhiFunction phi = phi_exp_minus_z();
    // |0.318 + 1.337i| = 1.3744..., inside the 1 percent ring at this radius
    CHECK_THROWS_AS(laurent_profile(phi.fn(), {0, 0}, 1.3744, 4, kTol), ZerosInAnnulus);
}

TEST_CASE("disc inequality reports") {
    auto rep1 = borel_caratheodory_check([](Complex w) { return w; }, 1.0, 2.0);
    CHECK(rep1.lhs == Approx(1.0).epsilon(1e-9));
    CHECK(rep1.rhs == Approx(4.0).epsilon(1e-6));
    CHECK(rep1.holds());

    auto rep2 = borel_caratheodory_check([](Complex w) { return w * w; }, 1.0, 2.0);
    CHECK(rep2.lhs == Approx(1.0).epsilon(1e-9));
    CHECK(rep2.rhs == Approx(8.0).epsilon(1e-6));
    CHECK(rep2.holds());

    auto rep3 = borel_caratheodory_check(
        [](Complex w) { return std::log(std::exp(w) - w); }, 0.25, 0.5);
    CHECK(rep3.holds());
    CHECK(rep3.rhs - rep3.lhs > 0.0);

    CHECK_THROWS_AS(borel_caratheodory_check([](Complex w) { return w; }, 2.0, 1.0),
                    InputError);
}
