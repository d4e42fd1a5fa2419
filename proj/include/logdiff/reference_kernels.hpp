#pragma once

#include "logdiff/grid.hpp"

namespace logdiff::ref {

// Plain serial implementations kept as independent oracles for the production
// kernels. They avoid FFTs and weight tables on purpose: different error
// structure, same operators. O(n^2); meant for tests and the benchmark tool.

/// Riesz principal-value quadrature, straightforward loop with per-term pow.
Field frac_laplacian_riesz(const Field& f, double sigma);

/// Periodic Hilbert transform as a singular-kernel sum: the odd-offset
/// cotangent quadrature (Hf)_i = (2/n) sum_{m odd} cot(pi m / n) f_{i-m},
/// which represents the -i sgn(xi) multiplier exactly on an even grid.
Field hilbert_pv(const Field& f);

/// (-Delta)^{sigma/2} by naive O(n^2) trigonometric sums (no FFT), the same
/// |xi|^sigma symbol as the spectral production path.
Field frac_laplacian_dft(const Field& f, double sigma);

}  // namespace logdiff::ref
