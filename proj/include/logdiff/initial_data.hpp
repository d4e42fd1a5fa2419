#pragma once

#include <string>

#include "logdiff/grid.hpp"

namespace logdiff {

/// Catalog of nonnegative initial profiles.
struct InitialDataSpec {
    enum class Kind { Gaussian, Box, DoubleBump, Poisson, FromFile };
    Kind kind = Kind::Gaussian;

    // gaussian(amplitude, width, center); double_bump adds a second one
    double amplitude = 1.0, width = 1.0, center = 0.0;
    double amplitude2 = 0.5, width2 = 1.0, center2 = 4.0;
    // box(height, halfwidth)
    double height = 1.0, halfwidth = 1.0;
    // poisson(t0)
    double t0 = 1.0;
    // from_file(path): JSON snapshot
    std::string path;

    Field sample(const Grid1D& grid) const;
    void validate() const;
    std::string describe() const;

    static InitialDataSpec gaussian(double amplitude, double width, double center = 0.0);
    static InitialDataSpec box(double height, double halfwidth);
    static InitialDataSpec double_bump(double a1, double w1, double c1, double a2, double w2,
                                       double c2);
    static InitialDataSpec poisson(double t0);
    static InitialDataSpec from_file(std::string path);
};

}  // namespace logdiff
