#include "logdiff/reference_kernels.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "logdiff/riesz.hpp"

namespace logdiff::ref {

namespace {

// Image part of the periodized kernel, written out inline: 50 explicit
// images plus the Euler-Maclaurin remainder of the sum.
double image_kernel_ref(double y, double period, double sigma) {
    double s = 0.0;
    for (int m = 1; m <= 50; ++m) s += std::pow(y + period * m, -1.0 - sigma);
    const double edge = y + period * 50.5;
    s += std::pow(edge, -sigma) / (sigma * period);
    s -= (1.0 + sigma) * std::pow(edge, -2.0 - sigma) * period / 24.0;
    return s;
}

}  // namespace

Field frac_laplacian_riesz(const Field& f, double sigma) {
    if (!(sigma > 0.0) || !(sigma < 2.0))
        throw std::invalid_argument("ref::frac_laplacian_riesz: sigma must lie in (0, 2)");
    const Grid1D& g = f.grid();
    const int n = g.n;
    const double h = g.h;
    const double period = 2.0 * g.L;
    const double c = riesz_constant(sigma);

    std::vector<double> out(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const double fi = f[i];
        auto pair = [&](int j) {
            return 2.0 * fi - f[(i + j) % n] - f[(i - j % n + n) % n];
        };
        const double d1 = pair(1);
        double acc = d1 * std::pow(h, -sigma) / (2.0 - sigma);
        acc += 0.5 * h * d1 *
               (std::pow(h, -1.0 - sigma) + 2.0 * image_kernel_ref(h, period, sigma));
        for (int j = 2; j < n; ++j)
            acc += h * pair(j) *
                   (std::pow(j * h, -1.0 - sigma) + image_kernel_ref(j * h, period, sigma));
        out[static_cast<size_t>(i)] = c * acc;
    }
    return Field(g, std::move(out));
}

Field hilbert_pv(const Field& f) {
    const Grid1D& g = f.grid();
    const int n = g.n;
    std::vector<double> kernel(static_cast<size_t>(n), 0.0);
    for (int m = 1; m < n; m += 2)
        kernel[static_cast<size_t>(m)] =
            (2.0 / n) / std::tan(std::numbers::pi * m / n);
    std::vector<double> out(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int m = 1; m < n; m += 2)
            acc += kernel[static_cast<size_t>(m)] * f[(i - m + n) % n];
        out[static_cast<size_t>(i)] = acc;
    }
    return Field(g, std::move(out));
}

Field frac_laplacian_dft(const Field& f, double sigma) {
    if (!(sigma > 0.0) || sigma > 2.0)
        throw std::invalid_argument("ref::frac_laplacian_dft: sigma must lie in (0, 2]");
    const Grid1D& g = f.grid();
    const int n = g.n;
    const double xi1 = std::numbers::pi / g.L;
    const int nyq = n / 2;
    std::vector<std::complex<double>> hat(static_cast<size_t>(nyq) + 1);
    for (int k = 0; k <= nyq; ++k) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const double th = -2.0 * std::numbers::pi * j * k / n;
            acc += f[j] * std::complex<double>(std::cos(th), std::sin(th));
        }
        hat[static_cast<size_t>(k)] = acc / static_cast<double>(n) *
                                      (k == 0 ? 0.0 : std::pow(xi1 * k, sigma));
    }
    std::vector<double> out(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int k = 1; k < nyq; ++k) {
            const double th = 2.0 * std::numbers::pi * j * k / n;
            acc += 2.0 * (hat[static_cast<size_t>(k)].real() * std::cos(th) -
                          hat[static_cast<size_t>(k)].imag() * std::sin(th));
        }
        acc += hat[static_cast<size_t>(nyq)].real() * std::cos(std::numbers::pi * j);
        out[static_cast<size_t>(j)] = acc;
    }
    return Field(g, std::move(out));
}

}  // namespace logdiff::ref
