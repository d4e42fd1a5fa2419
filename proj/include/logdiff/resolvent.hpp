#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "logdiff/grid.hpp"
#include "logdiff/nonlinearity.hpp"
#include "logdiff/quadrature.hpp"

namespace logdiff {

/// Inner-solver knobs for one implicit step.
struct StepConfig {
    /// Residual sup-norm tolerance, relative to the floating-point scale of
    /// the residual evaluation (which is ~1 for moderate dt and data).
    double newton_tol = 1e-11;
    int max_newton_iters = 50;
    double sigma = 1.0;  // order of the diffusion operator; 1 for the main equation
    double cg_rtol = 1e-12;
    int cg_max_iters = 4000;
};

/// Thrown by the steppers; carries the time at which the step failed.
class SolverError : public std::runtime_error {
  public:
    SolverError(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
    double time() const { return t_; }

  private:
    double t_ = 0.0;
};

struct ResolventSolution {
    Field u;  // beta(w), the updated state
    Field w;  // phi(u), the solved variable
    int newton_iters = 0;
    double residual = 0.0;  // sup norm of beta(w) + dt A w - g at return
};

/// One implicit (backward Euler) step: solve beta(w) + dt (-Delta)^{sigma/2} w = g
/// in the w = phi(u) variable by damped Newton with matrix-free conjugate
/// gradients (the Jacobian diag(beta'(w)) + dt A is symmetric positive
/// definite). Requires g >= 0. Mass of u matches mass of g up to the residual,
/// since the operator's zero mode vanishes.
ResolventSolution resolvent_step(const Field& g, double dt, const Nonlinearity& nl,
                                 const StepConfig& cfg = {});

/// The strictly convex objective whose Euler-Lagrange equation is the
/// resolvent equation:
///   J(w) = (dt/2) <w, (-Delta)^{sigma/2} w>_h + h sum(Phi(w_i) - g_i w_i),
/// Phi' = beta (Phi(w) = e^w - w in the default mode, so J(0) = 2L).
double resolvent_objective(const Field& w, const Field& g, double dt, const Nonlinearity& nl,
                           double sigma = 1.0);

struct MinimizeResult {
    Field w;
    Field u;
    int iters = 0;
    double residual = 0.0;
    std::vector<double> objective_trace;  // strictly non-increasing
};

/// Minimize the resolvent objective directly by line-searched descent
/// (Barzilai-Borwein trial steps with Armijo backtracking). Solves the same
/// problem as resolvent_step through an independent path; the two w's agree
/// to within twice the tolerance.
MinimizeResult minimize_objective(const Field& g, double dt, const Nonlinearity& nl,
                                  const StepConfig& cfg = {});

struct DtSchedule {
    double dt0 = 1e-3;
    double ratio = 1.0;  // 1 = fixed step, > 1 = geometric growth
    double dt_max = std::numeric_limits<double>::infinity();  // cap for geometric growth
    static DtSchedule fixed(double dt) { return {dt, 1.0}; }
    static DtSchedule geometric(double dt0, double ratio,
                                double dt_max = std::numeric_limits<double>::infinity()) {
        return {dt0, ratio, dt_max};
    }
};

struct RunConfig {
    Grid1D grid;
    Nonlinearity nl = Nonlinearity::log1p();
    Field initial;
    double t_end = 1.0;
    DtSchedule schedule;
    int store_every = 1;  // trajectory/diagnostics cadence
    StepConfig step;

    void validate() const;
};

struct TrajectoryPoint {
    double t = 0.0;
    Field u;
    DiagnosticsRecord diag;
};

struct Trajectory {
    Grid1D grid;
    Nonlinearity nl = Nonlinearity::log1p();
    std::vector<TrajectoryPoint> points;

    const TrajectoryPoint& at(size_t i) const { return points.at(i); }
    size_t size() const { return points.size(); }
    /// index of the stored time closest to t
    size_t nearest_index(double t) const;
};

/// March the implicit scheme from cfg.initial to cfg.t_end, recording states
/// and diagnostics every store_every steps (the final state is always
/// recorded). All iterates stay nonnegative; step failures are rethrown with
/// the failing time attached.
Trajectory evolve(const RunConfig& cfg);

/// Classical RK4 on d_t u = -(-Delta)^{sigma/2} phi(u), the explicit reference
/// integrator. Enforces the CFL-type bound dt <= c h / max phi'(u) at start
/// and aborts if the sup norm exceeds 10x the initial one.
Trajectory evolve_explicit(const RunConfig& cfg);

/// Sup-norm residual of the mild-solution representation
///   u(t) = P(., mu t) * f - int_0^t A(., mu (t-s)) * F(u(s)) ds,
/// with A = (-Delta)^{1/2} P, mu = phi'(u0) frozen at the spatial max of
/// u(., t), and F(s) = phi(s) - phi(u0) - mu (s - u0). Needs the trajectory
/// stored densely (store_every == 1) for the time quadrature.
double mild_form_residual(const Trajectory& traj, double t);

}  // namespace logdiff
