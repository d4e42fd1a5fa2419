#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "logdiff/grid.hpp"
#include "logdiff/quadrature.hpp"

using namespace logdiff;

TEST_CASE("grid construction and invariants") {
    Grid1D g = Grid1D::make(64, 10.0);
    CHECK(g.h == 2.0 * 10.0 / 64);
    CHECK(g.x(0) == -10.0);
    CHECK(g.x(32) == 0.0);  // x = 0 is an exact node
    CHECK_THROWS_AS(Grid1D::make(60, 10.0), std::invalid_argument);  // not a power of two
    CHECK_THROWS_AS(Grid1D::make(4, 10.0), std::invalid_argument);   // too small
    CHECK_THROWS_AS(Grid1D::make(64, -1.0), std::invalid_argument);
}

TEST_CASE("field validates values") {
    Grid1D g = Grid1D::make(8, 1.0);
    std::vector<double> bad(8, 0.0);
    bad[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(Field(g, bad), std::invalid_argument);
    CHECK_THROWS_AS(Field(g, std::vector<double>(7, 0.0)), std::invalid_argument);
}

TEST_CASE("integrate: zero, constant, gaussian") {
    Grid1D g = Grid1D::make(1024, 50.0);
    CHECK(integrate(Field::zeros(g)) == 0.0);
    CHECK(integrate(Field::constant(g, 1.0)) == doctest::Approx(100.0).epsilon(1e-14));
    Field gauss = Field::sample(g, [](double x) { return std::exp(-x * x); });
    CHECK(std::abs(integrate(gauss) - std::sqrt(std::numbers::pi)) < 1e-12);
}

TEST_CASE("integrate is linear and positive") {
    Grid1D g = Grid1D::make(128, 5.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    Field a = Field::sample(g, [&](double) { return u(rng); });
    Field b = Field::sample(g, [&](double) { return u(rng); });
    CHECK(integrate(a) >= 0.0);
    CHECK(integrate(a + b) == doctest::Approx(integrate(a) + integrate(b)).epsilon(1e-13));
    CHECK(integrate(3.5 * a) == doctest::Approx(3.5 * integrate(a)).epsilon(1e-13));
}

TEST_CASE("lp norms") {
    Grid1D g = Grid1D::make(256, 1.0);
    Field one = Field::constant(g, 1.0);
    CHECK(lp_norm(one, 1.0) == doctest::Approx(2.0).epsilon(1e-14));

    Grid1D gb = Grid1D::make(1024, 50.0);
    Field gauss = Field::sample(gb, [](double x) { return std::exp(-x * x); });
    CHECK(std::abs(lp_norm(gauss, 2.0) - std::pow(std::numbers::pi / 2.0, 0.25)) < 1e-10);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    Field r = Field::sample(gb, [&](double) { return u(rng); });
    double mx = 0.0;
    for (double v : r.values()) mx = std::max(mx, std::abs(v));
    CHECK(lp_norm(r, std::numeric_limits<double>::infinity()) == mx);

    CHECK_THROWS_AS(lp_norm(one, 0.5), std::invalid_argument);

    // scaling |c| ||f||_p for several p and c
    for (double p : {1.0, 2.0, 4.0, 7.5}) {
        for (double c : {-2.5, 0.25, 3.0}) {
            CHECK(lp_norm(c * r, p) == doctest::Approx(std::abs(c) * lp_norm(r, p))
                                           .epsilon(1e-12));
        }
    }
}

TEST_CASE("psi values and convexity") {
    CHECK(psi(0.0) == 0.0);
    CHECK(psi(std::numbers::e - 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(psi(-0.1), std::invalid_argument);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> s_dist(0.0, 50.0);
    std::uniform_real_distribution<double> l_dist(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double s1 = s_dist(rng), s2 = s_dist(rng), lam = l_dist(rng);
        const double lhs = psi(lam * s1 + (1.0 - lam) * s2);
        const double rhs = lam * psi(s1) + (1.0 - lam) * psi(s2);
        const double scale = std::max({psi(s1), psi(s2), 1.0});
        CHECK(lhs <= rhs + 1e-12 * scale);
    }

    // Psi(s) <= s log(1+s) <= s^2 on a sampled grid
    for (int i = 0; i <= 400; ++i) {
        const double s = 25.0 * i / 400.0;
        CHECK(psi(s) <= s * std::log1p(s) + 1e-14);
        CHECK(s * std::log1p(s) <= s * s + 1e-14);
    }
}

TEST_CASE("lx functional of a sharp bump") {
    Grid1D g = Grid1D::make(2048, 10.0);
    const double c = 3.0;
    Field bump = Field::sample(g, [=](double x) { return (x >= 0.0 && x < 1.0) ? c : 0.0; });
    const double expected = psi(c);  // support has length exactly 1
    CHECK(std::abs(lx_functional(bump) - expected) < 2.0 * g.h * psi(c));
    Field neg = Field::constant(g, -1e-3);
    CHECK_THROWS_AS(lx_functional(neg), std::invalid_argument);
}

TEST_CASE("diagnostics record basic sanity") {
    Grid1D g = Grid1D::make(512, 20.0);
    Field gauss = Field::sample(g, [](double x) { return 2.0 * std::exp(-x * x); });
    DiagnosticsRecord r = diagnostics(gauss, 0.5);
    CHECK(r.t == 0.5);
    CHECK(r.mass > 0.0);
    CHECK(r.lx > 0.0);
    CHECK(r.energy > 0.0);
    CHECK(r.max_u == doctest::Approx(2.0));
    CHECK(r.lp_norms().at(1.0) == doctest::Approx(r.l1));
}
