#pragma once

#include "logdiff/grid.hpp"

namespace logdiff {

/// Normalization constant of the 1-D hypersingular Riesz integral,
/// C_{1,sigma} = sigma 2^{sigma-1} Gamma((1+sigma)/2) / (sqrt(pi) Gamma(1-sigma/2));
/// equals 1/pi at sigma = 1.
double riesz_constant(double sigma);

/// (-Delta)^{sigma/2} f by principal-value quadrature of
/// C_{1,sigma} int (f(x)-f(y)) / |x-y|^{1+sigma} dy over the periodic images,
/// sigma in (0,2). The singular cell is handled by the symmetric pairing
/// 2f(x) - f(x+y) - f(x-y) with exact per-cell kernel weights; images are
/// truncated at |y| <= 3 periods and the remaining tail is approximated with
/// the field mean (error bounded by L^{-sigma} times the oscillation decay).
/// Agrees with the spectral operator to O(h^2) on smooth fields.
///
/// This is the OpenMP-parallel production kernel with a precomputed weight
/// table; logdiff::ref::frac_laplacian_riesz is the plain serial reference.
Field frac_laplacian_riesz(const Field& f, double sigma);

}  // namespace logdiff
