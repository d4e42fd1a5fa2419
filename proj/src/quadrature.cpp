#include "logdiff/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "logdiff/spectral.hpp"

namespace logdiff {

double integrate(const Field& f) {
    double s = 0.0;
    for (double v : f.values()) s += v;
    return f.grid().h * s;
}

double inner(const Field& a, const Field& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("inner: field grids differ");
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return a.grid().h * s;
}

double lp_norm(const Field& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.values()) m = std::max(m, std::abs(v));
        return m;
    }
    if (p == 1.0) {
        double s = 0.0;
        for (double v : f.values()) s += std::abs(v);
        return f.grid().h * s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (double v : f.values()) s += v * v;
        return std::sqrt(f.grid().h * s);
    }
    double s = 0.0;
    for (double v : f.values()) s += std::pow(std::abs(v), p);
    return std::pow(f.grid().h * s, 1.0 / p);
}

double psi(double s) {
    if (s < 0.0) throw std::invalid_argument("psi: negative argument");
    // (1+s)log1p(s) - s is stable down to s=0 where it behaves like s^2/2.
    return (1.0 + s) * std::log1p(s) - s;
}

double lx_functional(const Field& f) {
    if (!f.nonnegative()) throw std::invalid_argument("lx_functional: field must be >= 0");
    double s = 0.0;
    for (double v : f.values()) s += psi(v);
    return f.grid().h * s;
}

DiagnosticsRecord diagnostics(const Field& u, double t) {
    DiagnosticsRecord r;
    r.t = t;
    r.mass = integrate(u);
    r.l1 = lp_norm(u, 1.0);
    r.l2 = lp_norm(u, 2.0);
    r.l4 = lp_norm(u, 4.0);
    r.linf = lp_norm(u, std::numeric_limits<double>::infinity());
    r.lx = lx_functional(u);
    Field w = u.map([](double s) { return std::log1p(s); });
    r.energy = 0.5 * quarter_laplacian_energy(w);
    r.min_u = u.min();
    r.max_u = u.max();
    return r;
}

}  // namespace logdiff
