#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "expzero/elliptic.hpp"

using namespace expzero;
using Catch::Approx;

namespace {

const Complex kI{0.0, 1.0};

std::vector<Complex> cell_points(const EllipticData& d, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.15, 0.85);
    std::vector<Complex> pts;
    for (int i = 0; i < count; ++i) pts.push_back(u(rng) * d.omega1 + u(rng) * d.omega2);
    return pts;
}

}  // namespace

TEST_CASE("square lattice has vanishing g3 and depth-stable g2") {
    EllipticData d = elliptic_from_lattice({2, 0}, {0, 2}, 40);
    CHECK(std::abs(d.g3) < 1e-12);
    EllipticData deeper = elliptic_from_lattice({2, 0}, {0, 2}, 50);
    CHECK(std::abs(d.g2 - deeper.g2) < 1e-9);
    CHECK(d.g2.real() == Approx(11.817045008077116).epsilon(1e-12));
}

TEST_CASE("Legendre relation holds for assorted lattices") {
    const double two_pi = 6.283185307179586476925287;
    for (auto [w1, w2] : {std::pair<Complex, Complex>{{2, 0}, {0, 2}},
                          {{2, 0}, {0.5, 1.8}},
                          {{1.3, -0.2}, {0.4, 1.1}}}) {
        EllipticData d = elliptic_from_lattice(w1, w2, 60);
        Complex leg = d.omega1 * d.eta2 - d.omega2 * d.eta1;
        double dist = std::min(std::abs(leg - Complex{0, two_pi}),
                               std::abs(leg + Complex{0, two_pi}));
        CHECK(dist < 1e-8);
    }
}

TEST_CASE("degenerate lattices are rejected") {
    CHECK_THROWS_AS(elliptic_from_lattice({2, 0}, {3, 0}, 40), DegenerateLattice);
    CHECK_THROWS_AS(elliptic_from_lattice({1, 1}, {-2, -2}, 40), DegenerateLattice);
}

TEST_CASE("defining identities against finite differences") {
    EllipticData d = elliptic_from_lattice({2, 0}, {0.5, 1.8}, 60);
    const double h = 1e-6;
    for (Complex z : cell_points(d, 12, 31)) {
        // zeta' = -wp
        Complex zd = (zeta_w(d, z + h) - zeta_w(d, z - h)) / (2 * h);
        CHECK(std::abs(zd + wp(d, z)) < 1e-6 * std::max(1.0, std::abs(wp(d, z))));
        // sigma'/sigma = zeta
        Complex sd = (sigma_w(d, z + h) - sigma_w(d, z - h)) / (2 * h) / sigma_w(d, z);
        CHECK(std::abs(sd - zeta_w(d, z)) < 1e-6 * std::max(1.0, std::abs(zeta_w(d, z))));
        // (wp')^2 = 4 wp^3 - g2 wp - g3
        Complex p = wp(d, z), pp = wp_prime(d, z);
        Complex rhs = 4.0 * p * p * p - d.g2 * p - d.g3;
        CHECK(std::abs(pp * pp - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
        // wp is even
        CHECK(std::abs(wp(d, -z) - p) < 1e-10 * std::max(1.0, std::abs(p)));
        // wp' from finite differences of wp
        Complex pd = (wp(d, z + h) - wp(d, z - h)) / (2 * h);
        CHECK(std::abs(pd - pp) < 1e-5 * std::max(1.0, std::abs(pp)));
    }
}

TEST_CASE("quasi-periodicity of zeta and the half-period critical point") {
    EllipticData d = elliptic_from_lattice({2, 0}, {0.5, 1.8}, 60);
    for (Complex z : cell_points(d, 10, 77)) {
        CHECK(std::abs(zeta_w(d, z + d.omega1) - zeta_w(d, z) - d.eta1) < 1e-8);
        CHECK(std::abs(zeta_w(d, z + d.omega2) - zeta_w(d, z) - d.eta2) < 1e-8);
    }
    CHECK(std::abs(wp_prime(d, d.omega1 / 2.0)) < 1e-8);
    CHECK_THROWS_AS(wp(d, Complex{0, 0}), LatticePointInput);
    CHECK_THROWS_AS(zeta_w(d, d.omega1), LatticePointInput);
}

TEST_CASE("sigma quasi-periodicity including the sign") {
    EllipticData d = elliptic_from_lattice({2, 0}, {0.5, 1.8}, 60);
    for (Complex z : cell_points(d, 8, 5)) {
        Complex lhs = sigma_w(d, z + d.omega1);
        Complex rhs = -sigma_w(d, z) * std::exp(d.eta1 * (z + d.omega1 / 2.0));
        CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
        Complex lhs2 = sigma_w(d, z + d.omega1 + d.omega2);
        Complex rhs2 = -sigma_w(d, z) *
                       std::exp((d.eta1 + d.eta2) * (z + (d.omega1 + d.omega2) / 2.0));
        CHECK(std::abs(lhs2 - rhs2) < 1e-8 * std::max(1.0, std::abs(rhs2)));
    }
}

TEST_CASE("exponential baker factors are doubly periodic") {
    EllipticData d = elliptic_from_lattice({2, 0}, {0.5, 1.8}, 60);
    CHECK(baker_akhiezer_phi(d, 0, 0, Complex{0.3, 0.2}) == Complex{1.0, 0.0});
    for (Complex z : cell_points(d, 20, 11)) {
        for (auto [p, q] : {std::pair<int, int>{1, 0}, {1, 1}}) {
            Complex base = baker_akhiezer_phi(d, p, q, z);
            for (Complex shift : {d.omega1, d.omega2}) {
                Complex moved = baker_akhiezer_phi(d, p, q, z + shift);
                CHECK(std::abs(moved / base - 1.0) < 1e-8);
            }
        }
    }
}

TEST_CASE("sigma-quotient baker factor") {
    EllipticData d = elliptic_from_lattice({2, 0}, {0.5, 1.8}, 60);
    Complex u = 0.31 * d.omega1 + 0.42 * d.omega2;

    // simple zero at z = u: |psi| scales linearly in |z - u|
    Complex dir{0.7, 0.4};
    double a1 = std::abs(baker_akhiezer_psi(d, u, u + 1e-4 * dir));
    double a2 = std::abs(baker_akhiezer_psi(d, u, u + 2e-4 * dir));
    CHECK(a2 / a1 == Approx(2.0).epsilon(0.1));

    // logarithmic derivative equals zeta(z-u) - zeta(z) - u wp(z)
    const double h = 1e-6;
    for (Complex z : cell_points(d, 10, 23)) {
        if (std::abs(z - u) < 0.1) continue;
        Complex ld = (baker_akhiezer_psi(d, u, z + h) - baker_akhiezer_psi(d, u, z - h)) /
                     (2 * h) / baker_akhiezer_psi(d, u, z);
        Complex expected = zeta_w(d, z - u) - zeta_w(d, z) - u * wp(d, z);
        CHECK(std::abs(ld - expected) < 1e-6 * std::max(1.0, std::abs(expected)));
        // addition form of the same quantity
        Complex classical = -zeta_w(d, u) +
                            0.5 * (wp_prime(d, z) + wp_prime(d, u)) / (wp(d, z) - wp(d, u)) -
                            u * wp(d, z);
        CHECK(std::abs(expected - classical) < 1e-8 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("half-period identity") {
    EllipticData d = elliptic_from_lattice({2, 0}, {0.5, 1.8}, 60);
    Complex hp = d.omega1 / 2.0;
    Complex e1 = wp(d, hp);
    Complex su = sigma_w(d, hp);
    for (Complex z : cell_points(d, 12, 47)) {
        if (std::abs(z - hp) < 0.15) continue;
        Complex lhs = wp(d, z) - e1;
        Complex psi = baker_akhiezer_psi(d, hp, z);
        Complex rhs = psi * psi / (su * su * baker_akhiezer_phi(d, 1, 0, z));
        CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("period vectors of log derivatives") {
    EllipticData d = elliptic_from_lattice({2, 0}, {0.5, 1.8}, 60);
    auto phi1 = [&](Complex z) { return baker_akhiezer_phi(d, 1, 0, z); };
    auto phi2 = [&](Complex z) { return baker_akhiezer_phi(d, 0, 1, z); };

    auto p1 = period_vector_of_log_derivative(d, phi1);
    CHECK(p1.first == 0);
    CHECK(std::abs(p1.second) == 1);
    auto p2 = period_vector_of_log_derivative(d, phi2);
    CHECK(std::abs(p2.first) == 1);
    CHECK(p2.second == 0);

    auto c = period_vector_of_log_derivative(d, [](Complex) { return Complex{2.5, 0.3}; });
    CHECK(c.first == 0);
    CHECK(c.second == 0);

    // multiplicativity
    auto prod = period_vector_of_log_derivative(
        d, [&](Complex z) { return phi1(z) * phi2(z); });
    CHECK(prod.first == p1.first + p2.first);
    CHECK(prod.second == p1.second + p2.second);

    // a doubly periodic exponential twist leaves the period vector unchanged
    auto twisted = period_vector_of_log_derivative(
        d, [&](Complex z) { return phi1(z) * std::exp(wp(d, z)); });
    CHECK(twisted.first == p1.first);
    CHECK(twisted.second == p1.second);
}
