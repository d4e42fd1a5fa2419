#include "logdiff/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "logdiff/dft.hpp"

namespace logdiff {

SpectralMultiplier SpectralMultiplier::make(const Grid1D& grid, double sigma) {
    if (!(sigma > 0.0) || sigma > 2.0)
        throw std::invalid_argument("SpectralMultiplier: sigma must lie in (0, 2]");
    SpectralMultiplier m;
    m.sigma = sigma;
    m.multipliers.resize(static_cast<size_t>(grid.n / 2 + 1));
    m.multipliers[0] = 0.0;
    const double xi1 = std::numbers::pi / grid.L;
    for (int k = 1; k <= grid.n / 2; ++k)
        m.multipliers[static_cast<size_t>(k)] = std::pow(xi1 * k, sigma);
    return m;
}

Field apply_symbol(const Field& f, const std::function<double(double)>& symbol) {
    const Grid1D& g = f.grid();
    Workspace& ws = Workspace::local(g.n);
    ws.forward(f.values());
    const double xi1 = std::numbers::pi / g.L;
    for (int k = 0; k <= g.n / 2; ++k) ws.hat()[k] *= symbol(xi1 * k);
    std::vector<double> out(static_cast<size_t>(g.n));
    ws.inverse(out);
    return Field(g, std::move(out));
}

Field frac_laplacian_spectral(const Field& f, double sigma) {
    const Grid1D& g = f.grid();
    SpectralMultiplier m = SpectralMultiplier::make(g, sigma);
    Workspace& ws = Workspace::local(g.n);
    ws.forward(f.values());
    for (int k = 0; k <= g.n / 2; ++k) ws.hat()[k] *= m.multipliers[static_cast<size_t>(k)];
    std::vector<double> out(static_cast<size_t>(g.n));
    ws.inverse(out);
    return Field(g, std::move(out));
}

Field hilbert_transform(const Field& f) {
    const Grid1D& g = f.grid();
    Workspace& ws = Workspace::local(g.n);
    ws.forward(f.values());
    ws.hat()[0] = 0.0;
    const int nyq = g.n / 2;
    for (int k = 1; k < nyq; ++k) {
        // multiply by -i
        std::complex<double> c = ws.hat()[k];
        ws.hat()[k] = std::complex<double>(c.imag(), -c.real());
    }
    ws.hat()[nyq] = 0.0;
    std::vector<double> out(static_cast<size_t>(g.n));
    ws.inverse(out);
    return Field(g, std::move(out));
}

Field spectral_derivative(const Field& f) {
    const Grid1D& g = f.grid();
    Workspace& ws = Workspace::local(g.n);
    ws.forward(f.values());
    const double xi1 = std::numbers::pi / g.L;
    ws.hat()[0] = 0.0;
    const int nyq = g.n / 2;
    for (int k = 1; k < nyq; ++k) {
        std::complex<double> c = ws.hat()[k];
        ws.hat()[k] = std::complex<double>(-xi1 * k * c.imag(), xi1 * k * c.real());
    }
    ws.hat()[nyq] = 0.0;
    std::vector<double> out(static_cast<size_t>(g.n));
    ws.inverse(out);
    return Field(g, std::move(out));
}

Field spectral_antiderivative(const Field& f) {
    const Grid1D& g = f.grid();
    Workspace& ws = Workspace::local(g.n);
    ws.forward(f.values());
    const double xi1 = std::numbers::pi / g.L;
    ws.hat()[0] = 0.0;  // antiderivative of the zero-mean part only
    const int nyq = g.n / 2;
    for (int k = 1; k < nyq; ++k) {
        std::complex<double> c = ws.hat()[k];  // divide by (i xi_k)
        ws.hat()[k] = std::complex<double>(c.imag() / (xi1 * k), -c.real() / (xi1 * k));
    }
    ws.hat()[nyq] = 0.0;
    std::vector<double> out(static_cast<size_t>(g.n));
    ws.inverse(out);
    return Field(g, std::move(out));
}

Field poisson_kernel(const Grid1D& grid, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("poisson_kernel: t must be > 0");
    return Field::sample(grid, [t](double x) {
        return t / (std::numbers::pi * (x * x + t * t));
    });
}

Field harmonic_extension_slice(const Field& g, double y) {
    if (!(y > 0.0)) throw std::invalid_argument("harmonic_extension_slice: y must be > 0");
    return apply_symbol(g, [y](double xi) { return std::exp(-xi * y); });
}

double quarter_laplacian_energy(const Field& f) {
    const Grid1D& g = f.grid();
    Workspace& ws = Workspace::local(g.n);
    ws.forward(f.values());
    const double xi1 = std::numbers::pi / g.L;
    const int nyq = g.n / 2;
    double s = 0.0;
    for (int k = 1; k < nyq; ++k) s += 2.0 * (xi1 * k) * std::norm(ws.hat()[k]);
    s += (xi1 * nyq) * std::norm(ws.hat()[nyq]);
    return 2.0 * g.L * s;  // Plancherel weight: integral of |f|^2 = 2L sum |c_k|^2
}

namespace {
// Slice energy integrand: int (|d_x v|^2 + |d_y v|^2) dx at height y, where
// d_y v = -(-Delta)^{1/2} v on each slice of the harmonic extension.
double slice_energy(const Field& f, double y) {
    Field v = harmonic_extension_slice(f, y);
    Field vx = spectral_derivative(v);
    Field vy = frac_laplacian_spectral(v, 1.0);
    double s = 0.0;
    for (int i = 0; i < v.size(); ++i) s += vx[i] * vx[i] + vy[i] * vy[i];
    return f.grid().h * s;
}

double simpson(const std::function<double(double)>& fn, double a, double b, int panels) {
    if (panels % 2) ++panels;
    const double dx = (b - a) / panels;
    double s = fn(a) + fn(b);
    for (int i = 1; i < panels; ++i) s += fn(a + i * dx) * (i % 2 ? 4.0 : 2.0);
    return s * dx / 3.0;
}
}  // namespace

double extension_dirichlet_energy(const Field& f, double y0, int octaves,
                                  int panels_per_octave) {
    if (!(y0 > 0.0) || octaves < 1) throw std::invalid_argument("extension_dirichlet_energy");
    auto g = [&f](double y) {
        return y == 0.0 ? slice_energy(f, 1e-300) : slice_energy(f, y);
    };
    // y = 0 slice is f itself; evaluate it directly to avoid the exp underflow path.
    auto g0 = [&f](double y) {
        if (y <= 0.0) {
            Field fx = spectral_derivative(f);
            Field fy = frac_laplacian_spectral(f, 1.0);
            double s = 0.0;
            for (int i = 0; i < f.size(); ++i) s += fx[i] * fx[i] + fy[i] * fy[i];
            return f.grid().h * s;
        }
        return slice_energy(f, y);
    };
    double total = simpson(g0, 0.0, y0, panels_per_octave);
    double lo = y0;
    for (int m = 0; m < octaves; ++m) {
        total += simpson(g, lo, 2.0 * lo, panels_per_octave);
        lo *= 2.0;
    }
    // Exponential tail: the slowest surviving mode decays like e^{-2 xi_1 y}.
    const double xi1 = std::numbers::pi / f.grid().L;
    total += slice_energy(f, lo) / (2.0 * xi1);
    return total;
}

}  // namespace logdiff
