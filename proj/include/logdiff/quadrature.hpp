#pragma once

#include <limits>
#include <map>

#include "logdiff/grid.hpp"

namespace logdiff {

/// Periodic rectangle rule, h * sum of values. Spectrally accurate for smooth
/// decaying data; exact for grid-resolved trigonometric polynomials.
double integrate(const Field& f);

/// Weighted inner product h * sum(a*b), the discrete L^2 pairing.
double inner(const Field& a, const Field& b);

/// (h * sum |f|^p)^{1/p}; p = infinity gives the grid max of |f|.
/// Rejects p < 1.
double lp_norm(const Field& f, double p);

/// Psi(s) = (1+s)log(1+s) - s, the convex integrand of the L log L functional.
/// Rejects negative input.
double psi(double s);

/// L_X(f) = integral of Psi(f); requires f >= 0 pointwise.
double lx_functional(const Field& f);

/// Per-time snapshot of the monitored scalar quantities.
struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double l1 = 0.0, l2 = 0.0, l4 = 0.0, linf = 0.0;
    double lx = 0.0;
    double energy = 0.0;  // (1/2) || (-Delta)^{1/4} log(1+u) ||_2^2
    double min_u = 0.0, max_u = 0.0;

    std::map<double, double> lp_norms() const {
        return {{1.0, l1},
                {2.0, l2},
                {4.0, l4},
                {std::numeric_limits<double>::infinity(), linf}};
    }
};

/// Compute the full record for a nonnegative field at time t.
DiagnosticsRecord diagnostics(const Field& u, double t);

}  // namespace logdiff
