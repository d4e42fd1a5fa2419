// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Grids stay at n <= 4096 and the whole run targets desk scale.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "logdiff/backlund.hpp"
#include "logdiff/inequalities.hpp"
#include "logdiff/quadrature.hpp"
#include "logdiff/resolvent.hpp"
#include "logdiff/smoothing.hpp"
#include "logdiff/spectral.hpp"

using namespace logdiff;

namespace {

int g_failures = 0;

void report(int id, const std::string& what, bool pass, const std::string& metrics) {
    std::printf("%s  [%2d] %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(),
                metrics.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

Trajectory log_run(const Field& f, double dt0, double ratio, double t_end,
                   double dt_max = std::numeric_limits<double>::infinity(),
                   double tol = 1e-12) {
    RunConfig cfg;
    cfg.grid = f.grid();
    cfg.nl = Nonlinearity::log1p();
    cfg.initial = f;
    cfg.t_end = t_end;
    cfg.schedule = {dt0, ratio, dt_max};
    cfg.step.newton_tol = tol;
    return evolve(cfg);
}

double max_mass_drift(const Trajectory& traj) {
    const double m0 = traj.points.front().diag.mass;
    if (m0 <= 0.0) return 0.0;
    double worst = 0.0;
    for (const auto& pt : traj.points)
        worst = std::max(worst, std::abs(pt.diag.mass - m0) / m0);
    return worst;
}

Field gaussian(const Grid1D& g, double a, double w = 1.0, double c = 0.0) {
    return Field::sample(g, [=](double x) {
        return a * std::exp(-((x - c) / w) * ((x - c) / w));
    });
}

// --- criterion 1: operator oracle ------------------------------------------
void criterion_1() {
    Grid1D g = Grid1D::make(4096, 200.0);
    Field p = poisson_kernel(g, 1.0);
    Field ap = frac_laplacian_spectral(p, 1.0);
    // closed form (1/pi)(1 - x^2)/(1 + x^2)^2, the sign the definition
    // A = (-Delta)^{1/2} P requires (equal to -d_t P)
    double err = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double x = g.x(i);
        const double r = x * x + 1.0;
        err = std::max(err, std::abs(ap[i] - (1.0 - x * x) / (std::numbers::pi * r * r)));
    }
    report(1, "half-laplacian of the Poisson kernel matches the closed form", err <= 1e-4,
           "sup err " + fmt(err) + ", tol 1e-4");
}

// --- criterion 2: linear semigroup ------------------------------------------
void criterion_2() {
    Grid1D g = Grid1D::make(4096, 200.0);
    Field p1 = poisson_kernel(g, 1.0);
    Field p2 = poisson_kernel(g, 2.0);
    std::vector<double> errs;
    for (double dt : {1.0 / 128, 1.0 / 256, 1.0 / 512}) {
        RunConfig cfg;
        cfg.grid = g;
        cfg.nl = Nonlinearity::linear();
        cfg.initial = p1;
        cfg.t_end = 1.0;
        cfg.schedule = DtSchedule::fixed(dt);
        cfg.step.newton_tol = 1e-12;
        cfg.store_every = 1 << 20;  // final state only
        errs.push_back(sup_diff(evolve(cfg).points.back().u, p2));
    }
    double worst_order = 1e9;
    for (size_t i = 0; i + 1 < errs.size(); ++i)
        worst_order = std::min(worst_order, std::log2(errs[i] / errs[i + 1]));
    const bool pass = errs.back() <= 1e-3 && worst_order >= 0.9;
    report(2, "linear flow reproduces the Poisson semigroup", pass,
           "sup err " + fmt(errs.back()) + " (tol 1e-3), order " + fmt(worst_order));
}

// --- criteria 3, 4, 5, 6: conservation, monotone functionals, contraction,
//     positivity over a seeded catalog --------------------------------------
struct CatalogResults {
    double worst_mass_drift = 0.0;
    double worst_increase = -1e300;
    double worst_energy_bound = 0.0;
    double worst_ordered = 0.0;
    double worst_unordered_increase = -1e300;
    double min_after_first = 1e300;
    int runs = 0;
};

CatalogResults run_catalog() {
    CatalogResults res;
    Grid1D g = Grid1D::make(512, 30.0);
    std::vector<Field> catalog;
    for (int s = 0; s < 12; ++s) {
        const double a = 0.4 + 0.3 * s;
        const double w = 0.6 + 0.12 * (s % 5);
        const double c = -6.0 + s;
        catalog.push_back(gaussian(g, a, w, c));
    }
    for (int s = 0; s < 4; ++s) {
        Field f = Field::sample(g, [&](double x) {
            return (std::abs(x - (s - 1.5)) <= 0.8 + 0.2 * s) ? 0.5 + 0.4 * s : 0.0;
        });
        catalog.push_back(f);
    }
    for (int s = 0; s < 4; ++s) {
        catalog.push_back(Field::sample(g, [&](double x) {
            return (0.5 + 0.2 * s) * std::exp(-(x + 3) * (x + 3)) +
                   0.7 * std::exp(-0.5 * (x - 2 - s) * (x - 2 - s));
        }));
    }

    for (const Field& f : catalog) {
        Trajectory traj = log_run(f, 2e-3, 1.1, 0.5);
        ++res.runs;
        const double m0 = traj.points.front().diag.mass;
        for (size_t k = 0; k < traj.points.size(); ++k) {
            const auto& d = traj.points[k].diag;
            res.worst_mass_drift = std::max(res.worst_mass_drift, std::abs(d.mass - m0) / m0);
            if (traj.points[k].t > 0.0)
                res.min_after_first = std::min(res.min_after_first, d.min_u);
            if (k > 0) {
                const auto& prev = traj.points[k - 1].diag;
                res.worst_increase =
                    std::max({res.worst_increase, d.l1 - prev.l1, d.l2 - prev.l2,
                              d.l4 - prev.l4, d.linf - prev.linf, d.lx - prev.lx,
                              d.energy - prev.energy});
                if (traj.points.front().diag.lx > 0.0)
                    res.worst_energy_bound =
                        std::max(res.worst_energy_bound,
                                 2.0 * traj.points[k].t * d.energy / traj.points.front().diag.lx);
            }
        }
    }

    // contraction pairs: 10 ordered, 10 unordered
    auto pp_integral = [](const Field& a, const Field& b) {
        double s = 0.0;
        for (int i = 0; i < a.size(); ++i) s += std::max(a[i] - b[i], 0.0);
        return a.grid().h * s;
    };
    for (int s = 0; s < 10; ++s) {
        Field f = gaussian(g, 0.5 + 0.1 * s, 1.0, -2.0);
        Field bump = gaussian(g, 0.2 + 0.05 * s, 1.5, 1.0 + 0.3 * s);
        Field f2 = f + bump;  // ordered pair f <= f2
        Trajectory ta = log_run(f, 5e-3, 1.15, 0.4);
        Trajectory tb = log_run(f2, 5e-3, 1.15, 0.4);
        for (size_t k = 0; k < std::min(ta.size(), tb.size()); ++k)
            res.worst_ordered =
                std::max(res.worst_ordered, pp_integral(ta.points[k].u, tb.points[k].u));
    }
    for (int s = 0; s < 10; ++s) {
        Field f = gaussian(g, 1.0, 1.0, -3.0 + 0.2 * s);
        Field f2 = gaussian(g, 0.8, 1.3, 2.0 + 0.2 * s);  // neither ordered
        Trajectory ta = log_run(f, 5e-3, 1.15, 0.4);
        Trajectory tb = log_run(f2, 5e-3, 1.15, 0.4);
        double prev = pp_integral(ta.points[0].u, tb.points[0].u);
        for (size_t k = 1; k < std::min(ta.size(), tb.size()); ++k) {
            const double cur = pp_integral(ta.points[k].u, tb.points[k].u);
            res.worst_unordered_increase = std::max(res.worst_unordered_increase, cur - prev);
            prev = cur;
        }
    }
    return res;
}

// --- criterion 7: sup-norm smoothing scaling --------------------------------
void criterion_7() {
    // Domain wide enough that the intermediate decay regime completes before
    // mass wraps around; the exponent window also guards on boundary growth.
    Grid1D g = Grid1D::make(2048, 150.0);
    Trajectory cal = log_run(gaussian(g, 50.0), 1e-3, 1.06, 4000.0, 60.0);
    std::vector<Trajectory> family;
    for (double lam : {1.0, 2.0, 4.0, 8.0})
        family.push_back(log_run(gaussian(g, 50.0 * lam), 1e-3, 1.06, 4000.0, 60.0));
    SmoothingReport rep = check_lp_linf_smoothing(cal, family, 2.0);
    const bool exp_ok =
        rep.exponent.valid && std::abs(rep.exponent.slope - (-1.0)) <= 0.15;
    double drift = max_mass_drift(cal);
    for (const auto& traj : family) drift = std::max(drift, max_mass_drift(traj));
    report(7, "sup-norm smoothing bound (p = 2) with one constant across amplitudes",
           rep.passed && exp_ok && drift <= 1e-8,
           "worst ratio " + fmt(rep.worst_ratio) + ", decay exponent " +
               fmt(rep.exponent.slope) + " (target -1 +- 0.15), mass drift " + fmt(drift));
}

// --- criterion 8: L log L smoothing and H^{1/2} bound ------------------------
void criterion_8() {
    // Family of amplitudes {1, 2, 4, 8}; each check calibrates on the member
    // whose fitted constant dominates (top for lx -> L2, bottom for H^{1/2})
    // and verifies the three others with the frozen constant.
    Grid1D g = Grid1D::make(512, 30.0);
    std::vector<Trajectory> runs;
    for (double a : {1.0, 2.0, 4.0, 8.0}) runs.push_back(log_run(gaussian(g, a), 1e-3, 1.08, 2.0));
    std::vector<Trajectory> lower{runs[0], runs[1], runs[2]};
    std::vector<Trajectory> upper{runs[1], runs[2], runs[3]};
    SmoothingReport lx = check_lx_l2_smoothing(runs[3], lower);
    SmoothingReport h12 = check_h12_bound(runs[0], upper);
    double drift = 0.0;
    for (const auto& traj : runs) drift = std::max(drift, max_mass_drift(traj));
    report(8, "L log L -> L^2 smoothing and H^{1/2} control with calibrated constants",
           lx.passed && h12.passed && drift <= 1e-8,
           "lx worst " + fmt(lx.worst_ratio) + ", h12 worst " + fmt(h12.worst_ratio));
}

// --- criterion 9: transport bridge ------------------------------------------
void criterion_9() {
    // bridge + conservation along a run, residual refinement, direct oracle
    Grid1D g = Grid1D::make(512, 25.0);
    Trajectory traj = log_run(gaussian(g, 1.0), 5e-3, 1.0, 0.2);
    const double drift9 = max_mass_drift(traj);
    double worst_bridge = 0.0;
    for (const auto& pt : traj.points) {
        TransportField tf = to_transport(pt.u, pt.t);
        worst_bridge = std::max(worst_bridge,
                                std::abs(transport_conservation(tf) - pt.diag.mass) /
                                    pt.diag.mass);
    }

    TransportResidualReport rep_coarse, rep_fine;
    {
        Grid1D gc = Grid1D::make(256, 20.0);
        rep_coarse = transport_residual(log_run(gaussian(gc, 1.0), 1e-2, 1.0, 0.1));
        Grid1D gf = Grid1D::make(512, 20.0);
        rep_fine = transport_residual(log_run(gaussian(gf, 1.0), 5e-3, 1.0, 0.1));
    }
    double rc = 0.0, rf = 0.0;
    for (double r : rep_coarse.l2_residual) rc = std::max(rc, r);
    for (double r : rep_fine.l2_residual) rf = std::max(rf, r);
    const double order = std::log2(rc / rf);

    Grid1D gd = Grid1D::make(128, 12.0);
    Field u = gaussian(gd, 1.0);
    TransportField tf = to_transport(u, 0.0);
    std::vector<double> conj = modified_hilbert(tf, u);
    std::vector<double> direct = modified_hilbert_direct(tf);
    double oracle_err = 0.0;
    for (size_t i = 0; i < conj.size(); ++i)
        oracle_err = std::max(oracle_err, std::abs(conj[i] - direct[i]));

    const bool pass = worst_bridge <= 1e-4 && order >= 0.9 && oracle_err <= 0.5 * gd.h &&
                      drift9 <= 1e-8;
    report(9, "transport bridge, residual refinement, and direct-kernel oracle", pass,
           "bridge " + fmt(worst_bridge) + ", order " + fmt(order) + ", oracle err " +
               fmt(oracle_err) + " at h " + fmt(gd.h));
}

// --- criterion 10: inequality lab -------------------------------------------
void criterion_10() {
    Grid1D g = Grid1D::make(512, 30.0);

    std::vector<double> ag(1000), xg(1000);
    for (int i = 0; i < 1000; ++i) {
        ag[static_cast<size_t>(i)] = 30.0 * i / 999.0;
        xg[static_cast<size_t>(i)] = 10.0 * i / 999.0;
    }
    const double b1 = lemma_b1_worst_margin(ag, xg);

    SampleFamily fam{SampleFamily::Kind::RandomBandLimited, 200, 97};
    double sv_margin = 0.0;
    for (const Field& u : fam.generate(g)) {
        Field z = u.map([](double s) { return std::log1p(s); });
        auto r = check_stroock_varopoulos(z, 2.0);
        sv_margin = std::min(sv_margin, (r.lhs - r.rhs) / r.scale);
    }
    auto ident = stroock_varopoulos_identity(fam.generate(g).front());
    const double ident_margin = std::abs(ident.lhs - ident.rhs) / ident.scale;

    SampleFamily ngn_fam{SampleFamily::Kind::MultiBump, 200, 13};
    double cmax = 0.0;
    for (const Field& phi : ngn_fam.generate(g))
        cmax = std::max(cmax, ngn_ratio(phi, 1.0, 2.0, 0.5));
    double dmin = 1e300, dmax = 0.0;
    for (double lam : {0.5, 1.0, 2.0}) {
        Field phi = Field::sample(g, [lam](double x) {
            return std::exp(-(lam * x) * (lam * x));
        });
        const double r = ngn_ratio(phi, 1.0, 2.0, 0.5);
        dmin = std::min(dmin, r);
        dmax = std::max(dmax, r);
    }

    SampleFamily tr_fam{SampleFamily::Kind::MultiBump, 100, 29};
    auto members = tr_fam.generate(g);
    const double a22 = trudinger_alpha_search(members, 2.0, 2.0, 0.5);
    const double a42 = trudinger_alpha_search(members, 4.0, 2.0, 0.5);

    const bool pass = b1 >= -1e-12 && sv_margin >= -1e-8 && ident_margin <= 1e-10 &&
                      std::isfinite(cmax) && cmax > 0.0 && (dmax - dmin) / dmax <= 0.02 &&
                      a22 > 0.0 && a42 > 0.0;
    report(10, "inequality lab: calculus margin, Stroock-Varopoulos, interpolation, Orlicz",
           pass,
           "B1 " + fmt(b1) + ", SV " + fmt(sv_margin) + ", C " + fmt(cmax) + ", alpha " +
               fmt(a22) + "/" + fmt(a42));
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();

    criterion_1();
    criterion_2();

    CatalogResults cat = run_catalog();
    report(3, "mass conservation across the catalog", cat.worst_mass_drift <= 1e-8,
           "worst relative drift " + fmt(cat.worst_mass_drift) + " over " +
               std::to_string(cat.runs) + " runs");
    report(4, "monotone L^p, L_X, and energy with the 2tE <= 1.01 Lx bound",
           cat.worst_increase <= 1e-9 && cat.worst_energy_bound <= 1.01,
           "worst increase " + fmt(cat.worst_increase) + ", max 2tE/Lx " +
               fmt(cat.worst_energy_bound));
    report(5, "L^1 contraction for ordered and unordered pairs",
           cat.worst_ordered <= 1e-9 && cat.worst_unordered_increase <= 1e-9,
           "ordered " + fmt(cat.worst_ordered) + ", unordered increase " +
               fmt(cat.worst_unordered_increase));
    report(6, "strict positivity after the first implicit step", cat.min_after_first > 0.0,
           "min u " + fmt(cat.min_after_first));

    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d/10 criteria passed in %.1f s\n", 10 - g_failures, secs);
    return g_failures == 0 ? 0 : 1;
}
