#pragma once

#include <functional>
#include <vector>

#include "logdiff/grid.hpp"
#include "logdiff/resolvent.hpp"

namespace logdiff {

/// State in the transport variables: images y(x) of the grid nodes under the
/// change of variables y = int_0^x (1+u) ds - c(t), with v = log(1+u) carried
/// along, plus a uniform-grid copy for spectral work. The additive constant
/// is fixed per time slice as c(t) = H(log(1+u))(0, t), evaluated at the
/// x = 0 node.
struct TransportField {
    double t = 0.0;
    double period = 0.0;            // total y-extent, 2L + mass(u)
    std::vector<double> y_nodes;    // strictly increasing (Jacobian 1+u >= 1)
    std::vector<double> v_values;   // v >= 0 at the y nodes
    Field uniform_resample;         // monotone cubic resample of v on a uniform y grid
    double y_start = 0.0;           // left edge of the uniform window, y(-L)
};

/// Forward transform of a nonnegative state; y via the spectrally accurate
/// cumulative quadrature of 1+u.
TransportField to_transport(const Field& u, double t);

/// Modified Hilbert transform at the y nodes via conjugation: H(log(1+u))
/// computed spectrally on the x grid and carried to the y nodes.
std::vector<double> modified_hilbert(const TransportField& tf, const Field& u);

/// Direct principal-value quadrature of the conjugated-kernel formula
///   (1/pi) PV int v(y') / int_{y'}^{y} e^{v(y') - v(s)} ds dy'
/// evaluated on the non-uniform y nodes only (no use of the x frame): the
/// inner integral is e^{v(y')} times the x-displacement, accumulated by
/// trapezoid prefix sums of e^{-v}, and the displacement kernel is
/// periodized (cotangent form) to match the circle the data lives on.
/// O(n^2) oracle; rejected for n > 256.
std::vector<double> modified_hilbert_direct(const TransportField& tf);

/// Quarter-laplacian energy carried to the transport frame with the
/// conjugated operator: <v, d_y Hv>_y over the uniform window, where Hv is
/// the transported H(log(1+u)). Equals quarter_laplacian_energy(log(1+u))
/// up to resampling error (the flat y-frame operator would not: the H^{1/2}
/// seminorm is not invariant under non-Moebius reparametrizations).
double transport_quarter_energy(const TransportField& tf, const Field& u);

/// Integral over one y-period of fn(v) using a cubic spline through the
/// non-uniform nodes (periodic closure across the wrap cell).
double transport_integral(const TransportField& tf,
                          const std::function<double(double)>& fn);

/// Conservation-law integrand: int (1 - e^{-v}) dy, equal to int u dx.
double transport_conservation(const TransportField& tf);

/// int v dy, equal to int (1+u) log(1+u) dx.
double transport_l1_v(const TransportField& tf);

/// Reconstruct x at each y node from the transport data alone,
/// x(y_j) = int_{y(x=0)}^{y_j} e^{-v} ds, via spline-based quadrature.
/// Inverts the forward map; the sup deviation from the grid nodes is the
/// round-trip error.
std::vector<double> inverse_map(const TransportField& tf);

struct TransportResidualReport {
    std::vector<double> times;        // pair midpoints
    std::vector<double> l2_residual;  // residual of d_tau v - Hv d_y v + d_y Hv
    double max_conservation_drift = 0.0;  // relative drift of int(1-e^{-v}) dy
};

/// Residual of the transport equation along a diffusion trajectory:
/// time differencing of v on a common uniform y window per consecutive pair,
/// spatial terms spectral, averaged between the two levels.
TransportResidualReport transport_residual(const Trajectory& traj);

}  // namespace logdiff
