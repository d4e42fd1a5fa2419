#pragma once

#include <vector>

namespace logdiff {

/// Monotone cubic Hermite interpolant (Fritsch-Carlson slopes) on strictly
/// increasing nodes. No overshoot: values stay within the local data range.
class PchipInterpolant {
  public:
    PchipInterpolant(std::vector<double> x, std::vector<double> y);
    double operator()(double xq) const;

  private:
    std::vector<double> x_, y_, d_;  // nodes, values, node slopes
};

/// Natural cubic spline on strictly increasing nodes; fourth-order accurate
/// away from the ends for smooth data.
class CubicSpline {
  public:
    CubicSpline(std::vector<double> x, std::vector<double> y);
    double operator()(double xq) const;
    /// Integral over [a, b] (a <= b), cell-wise 4-point Gauss on the spline.
    double integrate(double a, double b) const;

  private:
    std::vector<double> x_, y_, m_;  // nodes, values, second derivatives
    double eval_cell(size_t cell, double xq) const;
};

}  // namespace logdiff
