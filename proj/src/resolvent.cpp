#include "logdiff/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "logdiff/spectral.hpp"

namespace logdiff {

namespace {

double sup_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// residual R(w) = beta(w) + dt A w - g; returns sup norm, fills r, and
/// reports the floating-point scale of the evaluation (the convergence test
/// is relative to it: for very large dt the terms dt A w reach O(dt ||Aw||)
/// and an absolute tolerance below eps times that is unattainable).
double residual(const Field& w, const Field& g, double dt, const Nonlinearity& nl,
                double sigma, std::vector<double>& r, double* scale = nullptr) {
    Field aw = frac_laplacian_spectral(w, sigma);
    r.resize(static_cast<size_t>(w.size()));
    double m = 0.0, sc = 0.0;
    for (int i = 0; i < w.size(); ++i) {
        const double terms = std::abs(nl.beta(w[i])) + std::abs(dt * aw[i]) + std::abs(g[i]);
        sc = std::max(sc, terms);
        r[static_cast<size_t>(i)] = nl.beta(w[i]) + dt * aw[i] - g[i];
        m = std::max(m, std::abs(r[static_cast<size_t>(i)]));
    }
    if (scale) *scale = std::max(1.0, sc);
    return m;
}

/// Preconditioned CG for (diag(d) + dt A) x = b with the Fourier-diagonal
/// preconditioner (mean(d) + dt |xi|^sigma)^{-1}. Matrix-free: A applied
/// spectrally.
Field pcg_solve(const std::vector<double>& d, double dt, double sigma, const Field& b,
                double rtol, int max_iters) {
    const Grid1D& grid = b.grid();
    double dbar = 0.0;
    for (double v : d) dbar += v;
    dbar = std::max(dbar / static_cast<double>(d.size()), 1e-300);

    auto apply = [&](const Field& x) {
        Field ax = frac_laplacian_spectral(x, sigma);
        std::vector<double> y(static_cast<size_t>(x.size()));
        for (int i = 0; i < x.size(); ++i)
            y[static_cast<size_t>(i)] = d[static_cast<size_t>(i)] * x[i] + dt * ax[i];
        return Field(grid, std::move(y));
    };
    auto precond = [&](const Field& r) {
        return apply_symbol(r, [&](double xi) { return 1.0 / (dbar + dt * std::pow(xi, sigma)); });
    };

    Field x = Field::zeros(grid);
    Field r = b;
    Field z = precond(r);
    Field p = z;
    double rz = inner(r, z);
    const double b2 = std::sqrt(inner(b, b));
    if (b2 == 0.0) return x;
    for (int it = 0; it < max_iters; ++it) {
        Field ap = apply(p);
        double pap = inner(p, ap);
        if (!(pap > 0.0)) break;  // numerically semi-definite; accept current iterate
        double alpha = rz / pap;
        for (int i = 0; i < x.size(); ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        if (std::sqrt(inner(r, r)) <= rtol * b2) break;
        z = precond(r);
        double rz_new = inner(r, z);
        double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
    }
    return x;
}

}  // namespace

double resolvent_objective(const Field& w, const Field& g, double dt, const Nonlinearity& nl,
                           double sigma) {
    Field aw = frac_laplacian_spectral(w, sigma);
    double quad = 0.0, local = 0.0;
    for (int i = 0; i < w.size(); ++i) {
        quad += w[i] * aw[i];
        local += nl.beta_primitive(w[i]) - g[i] * w[i];
    }
    const double h = w.grid().h;
    return 0.5 * dt * h * quad + h * local;
}

ResolventSolution resolvent_step(const Field& g, double dt, const Nonlinearity& nl,
                                 const StepConfig& cfg) {
    if (!(dt > 0.0)) throw std::invalid_argument("resolvent_step: dt must be > 0");
    if (!g.nonnegative()) throw std::invalid_argument("resolvent_step: g must be >= 0");
    const Grid1D& grid = g.grid();

    // w0 = phi(g) is exact as dt -> 0.
    Field w = g.map([&nl](double s) { return nl.phi(s); });
    std::vector<double> r;
    double res_scale = 1.0;
    double res = residual(w, g, dt, nl, cfg.sigma, r, &res_scale);
    double obj = resolvent_objective(w, g, dt, nl, cfg.sigma);
    int iter = 0;
    while (res > cfg.newton_tol * res_scale) {
        if (iter >= cfg.max_newton_iters) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.3e", res);
            throw SolverError("resolvent_step: Newton did not converge in " +
                                  std::to_string(cfg.max_newton_iters) +
                                  " iterations (residual " + buf + "); dt may be too large",
                              0.0);
        }
        std::vector<double> d(static_cast<size_t>(w.size()));
        for (int i = 0; i < w.size(); ++i) d[static_cast<size_t>(i)] = nl.dbeta(w[i]);
        Field rhs(grid, std::vector<double>(r.begin(), r.end()));
        Field delta = pcg_solve(d, dt, cfg.sigma, rhs, cfg.cg_rtol, cfg.cg_max_iters);

        // Armijo backtracking on the convex objective; the Newton direction
        // -delta is a descent direction since the Jacobian is SPD.
        double slope = 0.0;
        for (int i = 0; i < w.size(); ++i) slope -= r[static_cast<size_t>(i)] * delta[i];
        slope *= grid.h;  // gradient of the objective is h * residual
        double s = 1.0;
        Field w_try = w;
        double obj_try = obj;
        // Near convergence the predicted decrease drops below the round-off
        // floor of the objective; the sufficient-decrease test is meaningless
        // there and the raw Newton step is taken.
        const bool noise_floor = std::abs(slope) <= 1e-13 * (std::abs(obj) + 1.0);
        for (int back = 0; back < 40; ++back) {
            for (int i = 0; i < w.size(); ++i) w_try[i] = w[i] - s * delta[i];
            obj_try = resolvent_objective(w_try, g, dt, nl, cfg.sigma);
            if (noise_floor || slope >= 0.0 || obj_try <= obj + 1e-4 * s * slope) break;
            s *= 0.5;
        }
        w = w_try;
        obj = obj_try;
        res = residual(w, g, dt, nl, cfg.sigma, r, &res_scale);
        ++iter;
    }

    Field u = w.map([&nl](double x) { return nl.beta(x); });
    return ResolventSolution{std::move(u), std::move(w), iter, res};
}

MinimizeResult minimize_objective(const Field& g, double dt, const Nonlinearity& nl,
                                  const StepConfig& cfg) {
    if (!(dt > 0.0)) throw std::invalid_argument("minimize_objective: dt must be > 0");
    if (!g.nonnegative()) throw std::invalid_argument("minimize_objective: g must be >= 0");
    const Grid1D& grid = g.grid();
    const double h = grid.h;

    Field w = g.map([&nl](double s) { return nl.phi(s); });
    std::vector<double> r;
    double res_scale = 1.0;
    double res = residual(w, g, dt, nl, cfg.sigma, r, &res_scale);
    double obj = resolvent_objective(w, g, dt, nl, cfg.sigma);

    MinimizeResult out;
    out.objective_trace.push_back(obj);

    Field grad(grid, std::vector<double>(r.begin(), r.end()));  // gradient / h
    Field w_prev = w;
    Field grad_prev = grad;
    bool have_prev = false;
    const int max_iters = 20000;
    int it = 0;
    for (; it < max_iters && res > cfg.newton_tol * res_scale; ++it) {
        // Barzilai-Borwein trial step on the gradient direction.
        double step = 1.0;
        if (have_prev) {
            double sy = 0.0, yy = 0.0;
            for (int i = 0; i < w.size(); ++i) {
                double si = w[i] - w_prev[i];
                double yi = grad[i] - grad_prev[i];
                sy += si * yi;
                yy += yi * yi;
            }
            if (yy > 0.0 && sy > 0.0) step = sy / yy;
        } else {
            double gmax = 1.0;
            for (int i = 0; i < w.size(); ++i) gmax = std::max(gmax, nl.dbeta(w[i]));
            step = 1.0 / (gmax + dt * std::pow(std::numbers::pi / grid.L * (grid.n / 2),
                                               cfg.sigma));
        }
        double g2 = 0.0;
        for (int i = 0; i < w.size(); ++i) g2 += grad[i] * grad[i];
        g2 *= h;

        // Armijo backtracking keeps the trace monotone (up to the round-off
        // floor, where the decrease test stops being informative).
        const bool noise_floor = step * g2 <= 1e-13 * (std::abs(obj) + 1.0);
        Field w_try = w;
        double obj_try = obj;
        for (int back = 0; back < 60; ++back) {
            for (int i = 0; i < w.size(); ++i) w_try[i] = w[i] - step * grad[i];
            obj_try = resolvent_objective(w_try, g, dt, nl, cfg.sigma);
            if (noise_floor || obj_try <= obj - 1e-4 * step * g2) break;
            step *= 0.5;
        }
        w_prev = w;
        grad_prev = grad;
        have_prev = true;
        w = w_try;
        obj = obj_try;
        out.objective_trace.push_back(obj);
        res = residual(w, g, dt, nl, cfg.sigma, r, &res_scale);
        for (int i = 0; i < w.size(); ++i) grad[i] = r[static_cast<size_t>(i)];
    }
    if (res > cfg.newton_tol * res_scale) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3e", res);
        throw SolverError(std::string("minimize_objective: descent stalled at residual ") + buf,
                          0.0);
    }
    out.u = w.map([&nl](double x) { return nl.beta(x); });
    out.w = std::move(w);
    out.iters = it;
    out.residual = res;
    return out;
}

void RunConfig::validate() const {
    if (grid.n == 0) throw std::invalid_argument("RunConfig: grid not set");
    if (initial.size() != grid.n) throw std::invalid_argument("RunConfig: initial/grid mismatch");
    if (!initial.nonnegative()) throw std::invalid_argument("RunConfig: initial must be >= 0");
    if (!(t_end > 0.0)) throw std::invalid_argument("RunConfig: t_end must be > 0");
    if (!(schedule.dt0 > 0.0) || !(schedule.ratio >= 1.0))
        throw std::invalid_argument("RunConfig: bad dt schedule");
    if (store_every < 1) throw std::invalid_argument("RunConfig: store_every must be >= 1");
}

size_t Trajectory::nearest_index(double t) const {
    size_t best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < points.size(); ++i) {
        double d = std::abs(points[i].t - t);
        if (d < dist) {
            dist = d;
            best = i;
        }
    }
    return best;
}

Trajectory evolve(const RunConfig& cfg) {
    cfg.validate();
    Trajectory traj;
    traj.grid = cfg.grid;
    traj.nl = cfg.nl;
    traj.points.push_back({0.0, cfg.initial, diagnostics(cfg.initial, 0.0)});

    Field u = cfg.initial;
    double t = 0.0;
    double dt = cfg.schedule.dt0;
    long step_index = 0;
    while (t < cfg.t_end * (1.0 - 1e-12)) {
        double step_dt = std::min(dt, cfg.t_end - t);
        ResolventSolution sol = [&] {
            try {
                return resolvent_step(u, step_dt, cfg.nl, cfg.step);
            } catch (const SolverError& e) {
                throw SolverError(std::string(e.what()) + " at t = " + std::to_string(t),
                                  t);
            }
        }();
        u = std::move(sol.u);
        t += step_dt;
        ++step_index;
        dt = std::min(dt * cfg.schedule.ratio, cfg.schedule.dt_max);
        if (step_index % cfg.store_every == 0 || t >= cfg.t_end * (1.0 - 1e-12))
            traj.points.push_back({t, u, diagnostics(u, t)});
    }
    return traj;
}

Trajectory evolve_explicit(const RunConfig& cfg) {
    cfg.validate();
    const double cfl = 0.7;
    double max_dphi = cfg.nl.dphi(0.0);
    for (double v : cfg.initial.values()) max_dphi = std::max(max_dphi, cfg.nl.dphi(v));
    const double dt_bound = cfl * cfg.grid.h / max_dphi;
    if (cfg.schedule.dt0 > dt_bound)
        throw SolverError("evolve_explicit: dt exceeds the stability bound " +
                              std::to_string(dt_bound),
                          0.0);

    auto rhs = [&](const Field& v) {
        Field pv = v.map([&](double s) { return cfg.nl.phi(s); });
        Field av = frac_laplacian_spectral(pv, cfg.step.sigma);
        return -1.0 * av;
    };

    Trajectory traj;
    traj.grid = cfg.grid;
    traj.nl = cfg.nl;
    traj.points.push_back({0.0, cfg.initial, diagnostics(cfg.initial, 0.0)});
    const double blowup = 10.0 * std::max(sup_norm(cfg.initial.values()), 1e-300);

    Field u = cfg.initial;
    double t = 0.0;
    long step_index = 0;
    while (t < cfg.t_end * (1.0 - 1e-12)) {
        double dt = std::min(cfg.schedule.dt0, cfg.t_end - t);
        Field k1 = rhs(u);
        Field u2 = u + 0.5 * dt * k1;
        Field k2 = rhs(u2);
        Field u3 = u + 0.5 * dt * k2;
        Field k3 = rhs(u3);
        Field u4 = u + dt * k3;
        Field k4 = rhs(u4);
        for (int i = 0; i < u.size(); ++i)
            u[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        t += dt;
        ++step_index;
        if (sup_norm(u.values()) > blowup)
            throw SolverError("evolve_explicit: norm blow-up detected", t);
        if (step_index % cfg.store_every == 0 || t >= cfg.t_end * (1.0 - 1e-12)) {
            Field uc = u.map([](double s) { return std::max(s, 0.0); });
            traj.points.push_back({t, uc, diagnostics(uc, t)});
        }
    }
    return traj;
}

double mild_form_residual(const Trajectory& traj, double t) {
    if (traj.points.empty()) throw std::invalid_argument("mild_form_residual: empty trajectory");
    const size_t kt = traj.nearest_index(t);
    const Field& ut = traj.points[kt].u;
    const double tk = traj.points[kt].t;
    if (tk <= 0.0) return 0.0;

    // Freeze mu at the spatial max of u(., t).
    double u0 = ut[0];
    for (int i = 0; i < ut.size(); ++i) u0 = std::max(u0, ut[i]);
    const Nonlinearity& nl = traj.nl;
    const double mu = nl.dphi(u0);
    const double phi0 = nl.phi(u0);
    auto F = [&](double s) { return nl.phi(s) - phi0 - mu * (s - u0); };

    // Semigroup term P(., mu t) * f.
    Field mild = apply_symbol(traj.points[0].u,
                              [&](double xi) { return std::exp(-xi * mu * tk); });

    // Duhamel term: trapezoid in s over the stored times up to t of
    // A(., mu (t - s)) * F(u(s)), A having symbol xi e^{-xi tau}.
    Field accum = Field::zeros(traj.grid);
    for (size_t j = 0; j <= kt; ++j) {
        const double sj = traj.points[j].t;
        if (sj > tk) break;
        const double tau = mu * (tk - sj);
        Field fu = traj.points[j].u.map(F);
        Field term = apply_symbol(fu, [&](double xi) { return xi * std::exp(-xi * tau); });
        double wt;
        if (kt == 0) {
            wt = 0.0;
        } else if (j == 0) {
            wt = 0.5 * (traj.points[1].t - traj.points[0].t);
        } else if (j == kt) {
            wt = 0.5 * (traj.points[kt].t - traj.points[kt - 1].t);
        } else {
            wt = 0.5 * (traj.points[j + 1].t - traj.points[j - 1].t);
        }
        for (int i = 0; i < accum.size(); ++i) accum[i] += wt * term[i];
    }
    double m = 0.0;
    for (int i = 0; i < ut.size(); ++i)
        m = std::max(m, std::abs(ut[i] - (mild[i] - accum[i])));
    return m;
}

}  // namespace logdiff
