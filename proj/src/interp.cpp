#include "logdiff/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace logdiff {

namespace {
void check_nodes(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("interpolant: need >= 3 matching nodes");
    for (size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1]))
            throw std::invalid_argument("interpolant: nodes must be strictly increasing");
}

size_t find_cell(const std::vector<double>& x, double xq) {
    if (xq <= x.front()) return 0;
    if (xq >= x.back()) return x.size() - 2;
    auto it = std::upper_bound(x.begin(), x.end(), xq);
    return static_cast<size_t>(it - x.begin()) - 1;
}
}  // namespace

PchipInterpolant::PchipInterpolant(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    check_nodes(x_, y_);
    const size_t n = x_.size();
    std::vector<double> h(n - 1), del(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        del[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
        if (del[i - 1] * del[i] > 0.0) {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d_[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
        }
    }
    // Endpoint slopes: one-sided three-point formula, clipped to preserve shape.
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (d * d0 <= 0.0)
            d = 0.0;
        else if (d0 * d1 < 0.0 && std::abs(d) > 3.0 * std::abs(d0))
            d = 3.0 * d0;
        return d;
    };
    d_[0] = end_slope(h[0], h[1], del[0], del[1]);
    d_[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
}

double PchipInterpolant::operator()(double xq) const {
    const size_t i = find_cell(x_, xq);
    const double h = x_[i + 1] - x_[i];
    const double s = (xq - x_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    check_nodes(x_, y_);
    const size_t n = x_.size();
    m_.assign(n, 0.0);
    // Tridiagonal solve for second derivatives, natural ends.
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), r(n, 0.0);
    b[0] = b[n - 1] = 1.0;
    for (size_t i = 1; i + 1 < n; ++i) {
        const double hl = x_[i] - x_[i - 1];
        const double hr = x_[i + 1] - x_[i];
        a[i] = hl / 6.0;
        b[i] = (hl + hr) / 3.0;
        c[i] = hr / 6.0;
        r[i] = (y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl;
    }
    for (size_t i = 1; i < n; ++i) {
        const double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        r[i] -= w * r[i - 1];
    }
    m_[n - 1] = r[n - 1] / b[n - 1];
    for (size_t i = n - 1; i-- > 0;) m_[i] = (r[i] - c[i] * m_[i + 1]) / b[i];
}

double CubicSpline::eval_cell(size_t i, double xq) const {
    const double h = x_[i + 1] - x_[i];
    const double A = (x_[i + 1] - xq) / h;
    const double B = (xq - x_[i]) / h;
    return A * y_[i] + B * y_[i + 1] +
           ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::operator()(double xq) const { return eval_cell(find_cell(x_, xq), xq); }

double CubicSpline::integrate(double a, double b) const {
    if (b < a) return -integrate(b, a);
    // 4-point Gauss-Legendre nodes on [-1, 1]
    static const double gx[4] = {-0.8611363115940526, -0.3399810435848563,
                                 0.3399810435848563, 0.8611363115940526};
    static const double gw[4] = {0.3478548451374538, 0.6521451548625461,
                                 0.6521451548625461, 0.3478548451374538};
    double total = 0.0;
    size_t ca = find_cell(x_, a);
    size_t cb = find_cell(x_, b);
    for (size_t cell = ca; cell <= cb; ++cell) {
        const double lo = std::max(a, x_[cell]);
        const double hi = std::min(b, x_[cell + 1]);
        if (hi <= lo) continue;
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double s = 0.0;
        for (int q = 0; q < 4; ++q) s += gw[q] * eval_cell(cell, mid + half * gx[q]);
        total += s * half;
    }
    return total;
}

}  // namespace logdiff
