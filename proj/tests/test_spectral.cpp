#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "logdiff/quadrature.hpp"
#include "logdiff/reference_kernels.hpp"
#include "logdiff/spectral.hpp"

using namespace logdiff;

namespace {

/// Band-limited random field (modes below n/4), optionally zero-mean.
Field random_band_limited(const Grid1D& g, unsigned seed, bool zero_mean) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    const int kmax = g.n / 4;
    std::vector<double> a(static_cast<size_t>(kmax) + 1, 0.0);
    std::vector<double> b(static_cast<size_t>(kmax) + 1, 0.0);
    for (int k = zero_mean ? 1 : 0; k <= kmax; ++k) {
        a[static_cast<size_t>(k)] = amp(rng) / (1.0 + k);
        b[static_cast<size_t>(k)] = amp(rng) / (1.0 + k);
    }
    const double xi1 = std::numbers::pi / g.L;
    return Field::sample(g, [&](double x) {
        double v = zero_mean ? 0.0 : a[0];
        for (int k = 1; k <= kmax; ++k)
            v += a[static_cast<size_t>(k)] * std::cos(xi1 * k * x) +
                 b[static_cast<size_t>(k)] * std::sin(xi1 * k * x);
        return v;
    });
}

double poisson_a_closed_form(double x, double t) {
    // (-Delta)^{1/2} of the Poisson kernel: (1/pi) (t^2 - x^2) / (x^2 + t^2)^2.
    // Equal to -d_t P; positive at the peak, as the singular integral of a
    // maximum must be.
    const double r = x * x + t * t;
    return (t * t - x * x) / (std::numbers::pi * r * r);
}

}  // namespace

TEST_CASE("multiplier table invariants") {
    Grid1D g = Grid1D::make(64, 10.0);
    SpectralMultiplier m = SpectralMultiplier::make(g, 1.0);
    CHECK(m.multipliers[0] == 0.0);
    CHECK(m.multipliers.size() == 33);
    for (double v : m.multipliers) CHECK(v >= 0.0);
    CHECK(m.multipliers[1] == doctest::Approx(std::numbers::pi / 10.0));
    CHECK_THROWS_AS(SpectralMultiplier::make(g, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralMultiplier::make(g, 2.5), std::invalid_argument);
}

TEST_CASE("half-laplacian: constants and eigenmodes") {
    Grid1D g = Grid1D::make(256, 15.0);
    Field c = Field::constant(g, 4.2);
    for (double sigma : {0.5, 1.0, 2.0}) {
        Field ac = frac_laplacian_spectral(c, sigma);
        CHECK(sup_diff(ac, Field::zeros(g)) < 1e-13);
    }
    const double xi1 = std::numbers::pi / g.L;
    for (int k : {1, 3, 17}) {
        for (double sigma : {0.5, 1.0, 1.7}) {
            Field mode = Field::sample(g, [&](double x) { return std::cos(xi1 * k * x); });
            Field expected = Field::sample(g, [&](double x) {
                return std::pow(xi1 * k, sigma) * std::cos(xi1 * k * x);
            });
            CHECK(sup_diff(frac_laplacian_spectral(mode, sigma), expected) < 1e-11);
        }
    }
}

TEST_CASE("half-laplacian of the Poisson kernel matches the closed form") {
    Grid1D g = Grid1D::make(4096, 200.0);
    Field p = poisson_kernel(g, 1.0);
    Field ap = frac_laplacian_spectral(p, 1.0);
    double err = 0.0;
    for (int i = 0; i < g.n; ++i)
        err = std::max(err, std::abs(ap[i] - poisson_a_closed_form(g.x(i), 1.0)));
    CHECK(err < 1e-4);
}

TEST_CASE("spectral path agrees with the naive DFT reference") {
    Grid1D g = Grid1D::make(128, 8.0);
    Field f = random_band_limited(g, 99, false);
    for (double sigma : {0.5, 1.0, 2.0}) {
        Field a = frac_laplacian_spectral(f, sigma);
        Field b = ref::frac_laplacian_dft(f, sigma);
        CHECK(sup_diff(a, b) < 1e-10);
    }
}

TEST_CASE("hilbert transform: multiplier identity, involution, kernels") {
    Grid1D g = Grid1D::make(512, 20.0);
    const double xi1 = std::numbers::pi / g.L;
    for (int k : {1, 5, 31}) {
        Field cosk = Field::sample(g, [&](double x) { return std::cos(xi1 * k * x); });
        Field sink = Field::sample(g, [&](double x) { return std::sin(xi1 * k * x); });
        CHECK(sup_diff(hilbert_transform(cosk), sink) < 1e-12);
    }

    Field r = random_band_limited(g, 5, true);
    Field hh = hilbert_transform(hilbert_transform(r));
    CHECK(sup_diff(hh, -1.0 * r) < 1e-12);

    // periodic singular-kernel quadrature is the same operator
    Field hr = hilbert_transform(r);
    Field hr_pv = ref::hilbert_pv(r);
    CHECK(sup_diff(hr, hr_pv) < 1e-11);

    // H of the Poisson kernel is the conjugate kernel x / (pi (x^2 + t^2)).
    // The wrap-around tail of the slowly decaying conjugate kernel costs
    // O(1/L), so a wide domain and a centered comparison window are used.
    Grid1D gl = Grid1D::make(4096, 400.0);
    const double t = 2.0;
    Field p = poisson_kernel(gl, t);
    Field hp = hilbert_transform(p);
    double err = 0.0;
    for (int i = 0; i < gl.n; ++i) {
        const double x = gl.x(i);
        if (std::abs(x) > 10.0) continue;
        err = std::max(err,
                       std::abs(hp[i] - x / (std::numbers::pi * (x * x + t * t))));
    }
    CHECK(err < 1e-4);
}

TEST_CASE("poisson kernel: peak, mass, semigroup") {
    Grid1D g = Grid1D::make(4096, 1000.0);
    const double t = 1.0;
    Field p = poisson_kernel(g, t);
    CHECK(p[g.n / 2] == doctest::Approx(1.0 / (std::numbers::pi * t)).epsilon(1e-12));
    CHECK(std::abs(integrate(p) - 1.0) < 1e-3);
    CHECK_THROWS_AS(poisson_kernel(g, 0.0), std::invalid_argument);

    // P(., t1) * P(., t2) = P(., t1 + t2): convolve through the extension symbol
    Field p12 = harmonic_extension_slice(p, 2.5);  // e^{-|xi| 2.5} applied to P(., 1)
    Field p35 = poisson_kernel(g, 3.5);
    CHECK(sup_diff(p12, p35) < 1e-5);
}

TEST_CASE("harmonic extension slices") {
    Grid1D g = Grid1D::make(512, 25.0);
    Field c = Field::constant(g, 2.0);
    CHECK(sup_diff(harmonic_extension_slice(c, 1.7), c) < 1e-13);

    const double xi1 = std::numbers::pi / g.L;
    const int k = 4;
    Field mode = Field::sample(g, [&](double x) { return std::cos(xi1 * k * x); });
    Field slice = harmonic_extension_slice(mode, 0.9);
    Field expected = Field::sample(g, [&](double x) {
        return std::exp(-xi1 * k * 0.9) * std::cos(xi1 * k * x);
    });
    CHECK(sup_diff(slice, expected) < 1e-13);
    CHECK_THROWS_AS(harmonic_extension_slice(c, -1.0), std::invalid_argument);

    // -d_y at y -> 0+ recovers the half-laplacian, first order in y
    Field gauss = Field::sample(g, [](double x) { return std::exp(-x * x); });
    Field ag = frac_laplacian_spectral(gauss, 1.0);
    double prev_err = 0.0;
    for (int lvl = 0; lvl < 2; ++lvl) {
        const double y = lvl == 0 ? 2e-3 : 1e-3;
        Field fd = (1.0 / y) * (gauss - harmonic_extension_slice(gauss, y));
        const double err = sup_diff(fd, ag);
        if (lvl == 0)
            prev_err = err;
        else
            CHECK(err < 0.7 * prev_err);  // shrinks roughly linearly in y
    }
}

TEST_CASE("quarter-laplacian energy") {
    Grid1D g = Grid1D::make(512, 12.0);
    CHECK(quarter_laplacian_energy(Field::constant(g, 3.0)) < 1e-20);

    const double xi1 = std::numbers::pi / g.L;
    const int k = 5;
    const double a = 0.7;
    Field mode = Field::sample(g, [&](double x) { return a * std::cos(xi1 * k * x); });
    // one-mode Plancherel: integral of a^2 cos^2 = a^2 L, weighted by |xi_k|
    CHECK(quarter_laplacian_energy(mode) ==
          doctest::Approx(a * a * (xi1 * k) * g.L).epsilon(1e-12));

    Field r = random_band_limited(g, 21, false);
    const double direct = inner(r, frac_laplacian_spectral(r, 1.0));
    CHECK(std::abs(quarter_laplacian_energy(r) - direct) <
          1e-10 * std::max(1.0, std::abs(direct)));
}

TEST_CASE("self-adjointness of the fractional laplacian") {
    Grid1D g = Grid1D::make(256, 10.0);
    for (unsigned seed : {1u, 2u, 3u}) {
        Field f = random_band_limited(g, seed, false);
        Field h = random_band_limited(g, seed + 100, false);
        for (double sigma : {0.6, 1.0, 1.7}) {
            const double a = inner(h, frac_laplacian_spectral(f, sigma));
            const double b = inner(f, frac_laplacian_spectral(h, sigma));
            CHECK(std::abs(a - b) <= 1e-10 * std::max({std::abs(a), std::abs(b), 1.0}));
        }
    }
}

TEST_CASE("splitting identity H d_x = d_x H = half-laplacian") {
    Grid1D g = Grid1D::make(512, 18.0);
    Field f = random_band_limited(g, 31, false);
    Field a = frac_laplacian_spectral(f, 1.0);
    Field b = hilbert_transform(spectral_derivative(f));
    Field c = spectral_derivative(hilbert_transform(f));
    const double scale = std::max(1.0, lp_norm(a, std::numeric_limits<double>::infinity()));
    CHECK(sup_diff(a, b) <= 1e-10 * scale);
    CHECK(sup_diff(a, c) <= 1e-10 * scale);
}

TEST_CASE("extension energy matches the quarter-laplacian energy") {
    Grid1D g = Grid1D::make(512, 20.0);
    Field f = Field::sample(g, [](double x) { return std::exp(-x * x) * (2.0 + std::sin(x)); });
    const double exact = quarter_laplacian_energy(f);
    const double quad = extension_dirichlet_energy(f, g.h / 4.0, 18, 8);
    CHECK(std::abs(quad - exact) < 0.01 * exact);
}

TEST_CASE("spectral antiderivative inverts the derivative on zero-mean fields") {
    Grid1D g = Grid1D::make(256, 9.0);
    Field f = random_band_limited(g, 44, true);
    Field back = spectral_derivative(spectral_antiderivative(f));
    CHECK(sup_diff(back, f) < 1e-11);
}
