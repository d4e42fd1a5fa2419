#include "logdiff/initial_data.hpp"

#include <cmath>
#include <stdexcept>

#include "logdiff/io.hpp"
#include "logdiff/spectral.hpp"

namespace logdiff {

InitialDataSpec InitialDataSpec::gaussian(double amplitude, double width, double center) {
    InitialDataSpec s;
    s.kind = Kind::Gaussian;
    s.amplitude = amplitude;
    s.width = width;
    s.center = center;
    return s;
}

InitialDataSpec InitialDataSpec::box(double height, double halfwidth) {
    InitialDataSpec s;
    s.kind = Kind::Box;
    s.height = height;
    s.halfwidth = halfwidth;
    return s;
}

InitialDataSpec InitialDataSpec::double_bump(double a1, double w1, double c1, double a2,
                                             double w2, double c2) {
    InitialDataSpec s;
    s.kind = Kind::DoubleBump;
    s.amplitude = a1;
    s.width = w1;
    s.center = c1;
    s.amplitude2 = a2;
    s.width2 = w2;
    s.center2 = c2;
    return s;
}

InitialDataSpec InitialDataSpec::poisson(double t0) {
    InitialDataSpec s;
    s.kind = Kind::Poisson;
    s.t0 = t0;
    return s;
}

InitialDataSpec InitialDataSpec::from_file(std::string path) {
    InitialDataSpec s;
    s.kind = Kind::FromFile;
    s.path = std::move(path);
    return s;
}

void InitialDataSpec::validate() const {
    auto pos = [](double v, const char* what) {
        if (!(v > 0.0)) throw std::invalid_argument(std::string("initial data: ") + what +
                                                    " must be > 0");
    };
    switch (kind) {
        case Kind::Gaussian:
            if (amplitude < 0.0) throw std::invalid_argument("initial data: amplitude < 0");
            pos(width, "width");
            break;
        case Kind::Box:
            if (height < 0.0) throw std::invalid_argument("initial data: height < 0");
            pos(halfwidth, "halfwidth");
            break;
        case Kind::DoubleBump:
            if (amplitude < 0.0 || amplitude2 < 0.0)
                throw std::invalid_argument("initial data: amplitude < 0");
            pos(width, "width");
            pos(width2, "width2");
            break;
        case Kind::Poisson:
            pos(t0, "t0");
            break;
        case Kind::FromFile:
            if (path.empty()) throw std::invalid_argument("initial data: empty path");
            break;
    }
}

Field InitialDataSpec::sample(const Grid1D& grid) const {
    validate();
    switch (kind) {
        case Kind::Gaussian: {
            const double a = amplitude, w = width, c = center;
            return Field::sample(grid, [=](double x) {
                return a * std::exp(-((x - c) / w) * ((x - c) / w));
            });
        }
        case Kind::Box: {
            const double hgt = height, hw = halfwidth;
            return Field::sample(grid, [=](double x) { return std::abs(x) <= hw ? hgt : 0.0; });
        }
        case Kind::DoubleBump: {
            const double a1 = amplitude, w1 = width, c1 = center;
            const double a2 = amplitude2, w2 = width2, c2 = center2;
            return Field::sample(grid, [=](double x) {
                return a1 * std::exp(-((x - c1) / w1) * ((x - c1) / w1)) +
                       a2 * std::exp(-((x - c2) / w2) * ((x - c2) / w2));
            });
        }
        case Kind::Poisson:
            return poisson_kernel(grid, t0);
        case Kind::FromFile: {
            auto [field, t] = read_snapshot_json(path);
            if (field.grid() != grid)
                throw std::invalid_argument("initial data: snapshot grid mismatch in " + path);
            if (!field.nonnegative())
                throw std::invalid_argument("initial data: snapshot has negative values");
            return field;
        }
    }
    throw std::logic_error("unreachable");
}

std::string InitialDataSpec::describe() const {
    switch (kind) {
        case Kind::Gaussian:
            return "gaussian(a=" + std::to_string(amplitude) + ",w=" + std::to_string(width) +
                   ",c=" + std::to_string(center) + ")";
        case Kind::Box:
            return "box(h=" + std::to_string(height) + ",hw=" + std::to_string(halfwidth) + ")";
        case Kind::DoubleBump:
            return "double_bump";
        case Kind::Poisson:
            return "poisson(t0=" + std::to_string(t0) + ")";
        case Kind::FromFile:
            return "from_file(" + path + ")";
    }
    return "?";
}

}  // namespace logdiff
