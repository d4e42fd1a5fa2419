#include "logdiff/backlund.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "logdiff/interp.hpp"
#include "logdiff/quadrature.hpp"
#include "logdiff/spectral.hpp"

namespace logdiff {

namespace {

constexpr int kPad = 16;  // periodic padding cells for interpolants

/// Periodically pad (nodes, values) by kPad cells on each side.
void pad_periodic(const std::vector<double>& y, const std::vector<double>& v, double period,
                  std::vector<double>& yp, std::vector<double>& vp) {
    const size_t n = y.size();
    yp.clear();
    vp.clear();
    yp.reserve(n + 2 * kPad);
    vp.reserve(n + 2 * kPad);
    for (size_t i = n - kPad; i < n; ++i) {
        yp.push_back(y[i] - period);
        vp.push_back(v[i]);
    }
    for (size_t i = 0; i < n; ++i) {
        yp.push_back(y[i]);
        vp.push_back(v[i]);
    }
    for (size_t i = 0; i < kPad; ++i) {
        yp.push_back(y[i] + period);
        vp.push_back(v[i]);
    }
}

double wrap_into(double y, double y0, double period) {
    double r = std::fmod(y - y0, period);
    if (r < 0.0) r += period;
    return y0 + r;
}

std::vector<double> resample(const std::vector<double>& y, const std::vector<double>& v,
                             double period, const std::vector<double>& targets,
                             bool monotone_shape) {
    std::vector<double> yp, vp;
    pad_periodic(y, v, period, yp, vp);
    std::vector<double> out(targets.size());
    if (monotone_shape) {
        PchipInterpolant interp(std::move(yp), std::move(vp));
        for (size_t i = 0; i < targets.size(); ++i)
            out[i] = interp(wrap_into(targets[i], y[0], period));
    } else {
        CubicSpline interp(std::move(yp), std::move(vp));
        for (size_t i = 0; i < targets.size(); ++i)
            out[i] = interp(wrap_into(targets[i], y[0], period));
    }
    return out;
}

}  // namespace

TransportField to_transport(const Field& u, double t) {
    if (!u.nonnegative()) throw std::invalid_argument("to_transport: u must be >= 0");
    const Grid1D& g = u.grid();
    const int n = g.n;

    Field w = u.map([](double s) { return std::log1p(s); });
    const double c = hilbert_transform(w)[n / 2];  // x = 0 sits at index n/2

    // y(x) = (1 + mean u) x + (periodic antiderivative of u - mean u), anchored at x=0.
    const double mass = integrate(u);
    const double mean_u = mass / (2.0 * g.L);
    Field s_tilde = spectral_antiderivative(u);
    const double s0 = s_tilde[n / 2];

    TransportField tf;
    tf.t = t;
    tf.period = 2.0 * g.L + mass;
    tf.y_nodes.resize(static_cast<size_t>(n));
    tf.v_values.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        tf.y_nodes[static_cast<size_t>(i)] =
            (1.0 + mean_u) * g.x(i) + s_tilde[i] - s0 - c;
        tf.v_values[static_cast<size_t>(i)] = w[i];
    }
    for (int i = 1; i < n; ++i)
        if (!(tf.y_nodes[static_cast<size_t>(i)] > tf.y_nodes[static_cast<size_t>(i - 1)]))
            throw std::runtime_error("to_transport: y nodes not strictly increasing "
                                     "(field under-resolved)");
    tf.y_start = tf.y_nodes[0];

    // Uniform copy for spectral work, monotone cubic to avoid overshoot.
    const double hy = tf.period / n;
    std::vector<double> targets(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) targets[static_cast<size_t>(i)] = tf.y_start + hy * i;
    std::vector<double> vu = resample(tf.y_nodes, tf.v_values, tf.period, targets, true);
    tf.uniform_resample = Field(Grid1D::make(n, tf.period / 2.0), std::move(vu));
    return tf;
}

std::vector<double> modified_hilbert(const TransportField& tf, const Field& u) {
    if (u.size() != static_cast<int>(tf.y_nodes.size()))
        throw std::invalid_argument("modified_hilbert: inconsistent pair");
    Field w = u.map([](double s) { return std::log1p(s); });
    Field hw = hilbert_transform(w);
    return std::vector<double>(hw.values().begin(), hw.values().end());
}

std::vector<double> modified_hilbert_direct(const TransportField& tf) {
    const size_t n = tf.y_nodes.size();
    if (n > 256)
        throw std::invalid_argument("modified_hilbert_direct: O(n^2) oracle, n must be <= 256");

    // x-prefix along the y nodes: dx = e^{-v} dy by trapezoid.
    std::vector<double> xpfx(n, 0.0);
    for (size_t j = 1; j < n; ++j)
        xpfx[j] = xpfx[j - 1] + 0.5 * (tf.y_nodes[j] - tf.y_nodes[j - 1]) *
                                    (std::exp(-tf.v_values[j]) + std::exp(-tf.v_values[j - 1]));
    const double wrap_dy = tf.y_start + tf.period - tf.y_nodes[n - 1];
    const double x_total =
        xpfx[n - 1] + 0.5 * wrap_dy * (std::exp(-tf.v_values[n - 1]) + std::exp(-tf.v_values[0]));

    // Trapezoid node weights in y, periodic.
    std::vector<double> wy(n, 0.0);
    for (size_t j = 0; j < n; ++j) {
        const double ynext = (j + 1 < n) ? tf.y_nodes[j + 1] : tf.y_nodes[0] + tf.period;
        const double yprev = (j > 0) ? tf.y_nodes[j - 1] : tf.y_nodes[n - 1] - tf.period;
        wy[j] = 0.5 * (ynext - yprev);
    }

    std::vector<double> out(n, 0.0);
#pragma omp parallel for schedule(static)
    for (int ii = 0; ii < static_cast<int>(n); ++ii) {
        const size_t i = static_cast<size_t>(ii);
        double acc = 0.0;
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;  // principal value: symmetric neighbors cancel
            const double dx = xpfx[i] - xpfx[j];
            // periodized displacement kernel: 1/dx -> (pi/P) cot(pi dx / P)
            acc += wy[j] * tf.v_values[j] * std::exp(-tf.v_values[j]) /
                   (x_total * std::tan(std::numbers::pi * dx / x_total));
        }
        out[i] = acc;
    }
    return out;
}

double transport_quarter_energy(const TransportField& tf, const Field& u) {
    const int n = static_cast<int>(tf.y_nodes.size());
    std::vector<double> hw = modified_hilbert(tf, u);
    const double hy = tf.period / n;
    std::vector<double> targets(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) targets[static_cast<size_t>(i)] = tf.y_start + hy * i;
    Grid1D gy = Grid1D::make(n, tf.period / 2.0);
    Field hv(gy, resample(tf.y_nodes, hw, tf.period, targets, false));
    Field dhv = spectral_derivative(hv);
    Field vu(gy, std::vector<double>(tf.uniform_resample.values().begin(),
                                     tf.uniform_resample.values().end()));
    return inner(vu, dhv);
}

double transport_integral(const TransportField& tf, const std::function<double(double)>& fn) {
    const size_t n = tf.y_nodes.size();
    std::vector<double> g(n);
    for (size_t j = 0; j < n; ++j) g[j] = fn(tf.v_values[j]);
    std::vector<double> yp, gp;
    pad_periodic(tf.y_nodes, g, tf.period, yp, gp);
    CubicSpline spline(std::move(yp), std::move(gp));
    return spline.integrate(tf.y_start, tf.y_start + tf.period);
}

double transport_conservation(const TransportField& tf) {
    return transport_integral(tf, [](double v) { return -std::expm1(-v); });
}

double transport_l1_v(const TransportField& tf) {
    return transport_integral(tf, [](double v) { return v; });
}

std::vector<double> inverse_map(const TransportField& tf) {
    const size_t n = tf.y_nodes.size();
    std::vector<double> ev(n);
    for (size_t j = 0; j < n; ++j) ev[j] = std::exp(-tf.v_values[j]);
    std::vector<double> yp, evp;
    pad_periodic(tf.y_nodes, ev, tf.period, yp, evp);
    CubicSpline spline(std::move(yp), std::move(evp));
    // Prefix integrals cell by cell, then anchor at the node that maps to x = 0.
    std::vector<double> pfx(n, 0.0);
    for (size_t j = 1; j < n; ++j)
        pfx[j] = pfx[j - 1] + spline.integrate(tf.y_nodes[j - 1], tf.y_nodes[j]);
    const double anchor = pfx[n / 2];
    for (size_t j = 0; j < n; ++j) pfx[j] -= anchor;
    return pfx;
}

TransportResidualReport transport_residual(const Trajectory& traj) {
    TransportResidualReport rep;
    if (traj.points.size() < 2) return rep;

    double cons0 = -1.0;
    TransportField tf_a = to_transport(traj.points[0].u, traj.points[0].t);
    std::vector<double> hw_a = modified_hilbert(tf_a, traj.points[0].u);
    for (size_t k = 0; k + 1 < traj.points.size(); ++k) {
        TransportField tf_b = to_transport(traj.points[k + 1].u, traj.points[k + 1].t);
        std::vector<double> hw_b = modified_hilbert(tf_b, traj.points[k + 1].u);

        const double cons = transport_conservation(tf_a);
        if (cons0 < 0.0) cons0 = cons;
        if (cons0 > 0.0)
            rep.max_conservation_drift =
                std::max(rep.max_conservation_drift, std::abs(cons - cons0) / cons0);

        // Common uniform window from the earlier slice.
        const int n = static_cast<int>(tf_a.y_nodes.size());
        const double hy = tf_a.period / n;
        std::vector<double> targets(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) targets[static_cast<size_t>(i)] = tf_a.y_start + hy * i;
        Grid1D gy = Grid1D::make(n, tf_a.period / 2.0);

        Field va(gy, resample(tf_a.y_nodes, tf_a.v_values, tf_a.period, targets, true));
        Field vb(gy, resample(tf_b.y_nodes, tf_b.v_values, tf_b.period, targets, true));
        Field ha(gy, resample(tf_a.y_nodes, hw_a, tf_a.period, targets, false));
        Field hb(gy, resample(tf_b.y_nodes, hw_b, tf_b.period, targets, false));

        Field dva = spectral_derivative(va);
        Field dvb = spectral_derivative(vb);
        Field dha = spectral_derivative(ha);
        Field dhb = spectral_derivative(hb);

        const double dt = traj.points[k + 1].t - traj.points[k].t;
        std::vector<double> r(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double sa = ha[i] * dva[i] - dha[i];
            const double sb = hb[i] * dvb[i] - dhb[i];
            r[static_cast<size_t>(i)] = (vb[i] - va[i]) / dt - 0.5 * (sa + sb);
        }
        rep.times.push_back(0.5 * (traj.points[k].t + traj.points[k + 1].t));
        rep.l2_residual.push_back(lp_norm(Field(gy, std::move(r)), 2.0));

        tf_a = std::move(tf_b);
        hw_a = std::move(hw_b);
    }
    // Include the final slice in the conservation scan.
    const double cons_last = transport_conservation(tf_a);
    if (cons0 > 0.0)
        rep.max_conservation_drift =
            std::max(rep.max_conservation_drift, std::abs(cons_last - cons0) / cons0);
    return rep;
}

}  // namespace logdiff
