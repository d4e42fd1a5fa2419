#pragma once

#include <functional>
#include <vector>

#include "logdiff/grid.hpp"

namespace logdiff {

/// Fourier symbol |xi_k|^sigma over the grid frequencies xi_k = pi k / L.
/// multipliers[0] is exactly zero; entries are nonnegative (the negative-k
/// half is implied by symmetry of |xi|).
struct SpectralMultiplier {
    double sigma = 0.0;
    std::vector<double> multipliers;  // size n/2 + 1

    static SpectralMultiplier make(const Grid1D& grid, double sigma);
};

/// Apply a real even Fourier symbol s(|xi|) to f. The Nyquist mode is kept
/// (the symbol is real there).
Field apply_symbol(const Field& f, const std::function<double(double)>& symbol);

/// (-Delta)^{sigma/2} f via the Fourier multiplier |xi|^sigma. Output has
/// exactly zero mean. sigma outside (0, 2] is rejected.
Field frac_laplacian_spectral(const Field& f, double sigma);

/// Hilbert transform, multiplier -i sgn(xi); zero and Nyquist modes map to 0.
Field hilbert_transform(const Field& f);

/// Spectral d/dx (Nyquist zeroed, as usual for odd symbols).
Field spectral_derivative(const Field& f);

/// Periodic antiderivative of the zero-mean part of f, itself zero-mean.
/// The full antiderivative of f is mean(f)*x plus this, up to a constant.
Field spectral_antiderivative(const Field& f);

/// Sampled Poisson kernel P(x,t) = t / (pi (x^2 + t^2)); t <= 0 rejected.
Field poisson_kernel(const Grid1D& grid, double t);

/// Harmonic extension of g to the strip, evaluated on the slice at height
/// y > 0: convolution with the Poisson kernel, symbol e^{-|xi| y}.
Field harmonic_extension_slice(const Field& g, double y);

/// || (-Delta)^{1/4} f ||_2^2, the homogeneous H^{1/2} seminorm squared,
/// summed in Fourier space with the grid's Plancherel weight. Equals
/// integrate(f * frac_laplacian_spectral(f, 1)) to round-off.
double quarter_laplacian_energy(const Field& f);

/// Dirichlet energy of the harmonic extension, integral over y of slice
/// energies int(|d_x v|^2 + |d_y v|^2) dx. Quadrature: Simpson on [0, y0],
/// then panels_per_octave-panel Simpson on geometric octaves
/// [y0 2^m, y0 2^{m+1}], m < octaves (the integrand decays like e^{-2 xi_1
/// y}), plus an exponential-tail estimate. Agrees with
/// quarter_laplacian_energy within quadrature error for smooth f.
double extension_dirichlet_energy(const Field& f, double y0, int octaves,
                                  int panels_per_octave);

}  // namespace logdiff
