#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "logdiff/smoothing.hpp"
#include "logdiff/spectral.hpp"

using namespace logdiff;

namespace {

Trajectory gaussian_run(double amplitude, int n = 256, double L = 20.0, double t_end = 0.5,
                        double dt0 = 2e-3, double ratio = 1.05) {
    RunConfig cfg;
    cfg.grid = Grid1D::make(n, L);
    cfg.nl = Nonlinearity::log1p();
    cfg.initial = Field::sample(cfg.grid,
                                [=](double x) { return amplitude * std::exp(-x * x); });
    cfg.t_end = t_end;
    cfg.schedule = DtSchedule::geometric(dt0, ratio);
    cfg.step.newton_tol = 1e-12;
    return evolve(cfg);
}

}  // namespace

TEST_CASE("loglog fit recovers a power law exactly") {
    std::vector<double> t, v;
    for (int i = 1; i <= 50; ++i) {
        t.push_back(0.1 * i);
        v.push_back(3.0 * std::pow(0.1 * i, -0.75));
    }
    ExponentFit fit = fit_loglog(t, v, 0.2, 4.0);
    CHECK(fit.valid);
    CHECK(fit.slope == doctest::Approx(-0.75).epsilon(1e-10));
    CHECK(fit.stderr_slope < 1e-10);
}

TEST_CASE("trivial zero run gives zero ratios") {
    RunConfig cfg;
    cfg.grid = Grid1D::make(128, 10.0);
    cfg.initial = Field::zeros(cfg.grid);
    cfg.t_end = 0.05;
    cfg.schedule = DtSchedule::fixed(1e-2);
    Trajectory z = evolve(cfg);
    std::vector<Trajectory> fam{z};
    SmoothingReport rep = check_lp_linf_smoothing(z, fam, 2.0);
    CHECK(rep.passed);
    CHECK(rep.worst_ratio == 0.0);
    CHECK(rep.fitted_constant == 0.0);
}

TEST_CASE("sup-norm smoothing bound holds across an amplitude family") {
    Trajectory cal = gaussian_run(1.0);
    std::vector<Trajectory> family;
    for (double a : {2.0, 4.0, 8.0}) family.push_back(gaussian_run(a));
    SmoothingReport rep = check_lp_linf_smoothing(cal, family, 2.0);
    CHECK(rep.fitted_constant > 0.0);
    CHECK(rep.passed);
    CHECK(rep.worst_ratio <= 1.0);
}

TEST_CASE("L log L to L2 bound and combined sup bound hold with one constant") {
    // the fitted constant grows towards the large-amplitude members, so the
    // top of the family calibrates
    Trajectory cal = gaussian_run(4.0);
    std::vector<Trajectory> family;
    for (double a : {0.5, 1.0, 2.0}) family.push_back(gaussian_run(a));
    SmoothingReport rep = check_lx_l2_smoothing(cal, family);
    CHECK(rep.fitted_constant > 0.0);
    CHECK(rep.second_constant > 0.0);
    CHECK(rep.passed);
}

TEST_CASE("H^{1/2} bound: homogeneous part is constant-free") {
    // here the constant decays with amplitude, so the smallest member calibrates
    Trajectory cal = gaussian_run(0.5);
    std::vector<Trajectory> family;
    for (double a : {1.0, 2.0, 4.0}) family.push_back(gaussian_run(a));
    SmoothingReport rep = check_h12_bound(cal, family);
    CHECK(rep.passed);
    // sqrt(2 E(t)) <= t^{-1/2} Lx(f)^{1/2} directly
    const double lx0 = cal.points.front().diag.lx;
    for (const auto& pt : cal.points) {
        if (pt.t <= 0.0) continue;
        CHECK(std::sqrt(2.0 * pt.diag.energy) <=
              std::sqrt(lx0 / pt.t) * (1.0 + 1e-9));
    }
}

TEST_CASE("gradient tail bounds and the pointwise chain rule") {
    Trajectory cal = gaussian_run(1.0, 512, 20.0, 0.3, 2e-3, 1.0);
    Trajectory ver = gaussian_run(1.5, 512, 20.0, 0.3, 2e-3, 1.0);
    GradientReport rep = check_gradient_corollary(cal, ver);
    CHECK(rep.fitted_c_w > 0.0);
    CHECK(rep.fitted_c_u > 0.0);
    CHECK(rep.fitted_c_ut > 0.0);
    CHECK(rep.passed);
    CHECK(rep.chain_rule_error <= 1e-10);
}
