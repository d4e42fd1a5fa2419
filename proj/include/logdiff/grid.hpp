#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace logdiff {

/// Uniform periodic grid standing in for the real line, truncated to [-L, L).
/// Nodes are x_i = -L + i*h with h = 2L/n, so x = 0 sits exactly at index n/2.
struct Grid1D {
    int n = 0;       // node count, power of two, >= 8
    double L = 0.0;  // half-width of the domain
    double h = 0.0;  // spacing, 2L/n

    static Grid1D make(int n, double L) {
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid1D: n must be a power of two >= 8, got " +
                                        std::to_string(n));
        if (!(L > 0.0) || !std::isfinite(L))
            throw std::invalid_argument("Grid1D: L must be positive and finite");
        Grid1D g;
        g.n = n;
        g.L = L;
        g.h = 2.0 * L / static_cast<double>(n);
        return g;
    }

    double x(int i) const { return -L + h * static_cast<double>(i); }

    std::vector<double> nodes() const {
        std::vector<double> xs(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) xs[static_cast<size_t>(i)] = x(i);
        return xs;
    }

    bool operator==(const Grid1D& o) const { return n == o.n && L == o.L; }
    bool operator!=(const Grid1D& o) const { return !(*this == o); }
};

/// Real sample values on a Grid1D. Construction validates finiteness once;
/// operations treat fields as values and return new ones.
class Field {
  public:
    Field() = default;

    Field(Grid1D grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
        if (static_cast<int>(values_.size()) != grid_.n)
            throw std::invalid_argument("Field: value count does not match grid.n");
        for (double v : values_)
            if (!std::isfinite(v)) throw std::invalid_argument("Field: non-finite value");
    }

    static Field zeros(Grid1D grid) {
        return Field(grid, std::vector<double>(static_cast<size_t>(grid.n), 0.0));
    }

    static Field constant(Grid1D grid, double c) {
        return Field(grid, std::vector<double>(static_cast<size_t>(grid.n), c));
    }

    /// Sample a function of x on the grid nodes.
    static Field sample(Grid1D grid, const std::function<double(double)>& fn) {
        std::vector<double> v(static_cast<size_t>(grid.n));
        for (int i = 0; i < grid.n; ++i) v[static_cast<size_t>(i)] = fn(grid.x(i));
        return Field(grid, std::move(v));
    }

    const Grid1D& grid() const { return grid_; }
    int size() const { return grid_.n; }

    double operator[](int i) const { return values_[static_cast<size_t>(i)]; }
    double& operator[](int i) { return values_[static_cast<size_t>(i)]; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    double min() const {
        double m = values_[0];
        for (double v : values_) m = std::min(m, v);
        return m;
    }
    double max() const {
        double m = values_[0];
        for (double v : values_) m = std::max(m, v);
        return m;
    }

    bool nonnegative() const {
        for (double v : values_)
            if (v < 0.0) return false;
        return true;
    }

    /// Pointwise map, new field.
    Field map(const std::function<double(double)>& fn) const {
        std::vector<double> v(values_.size());
        for (size_t i = 0; i < values_.size(); ++i) v[i] = fn(values_[i]);
        return Field(grid_, std::move(v));
    }

  private:
    Grid1D grid_;
    std::vector<double> values_;
};

inline Field operator+(const Field& a, const Field& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("field grids differ");
    std::vector<double> v(static_cast<size_t>(a.size()));
    for (int i = 0; i < a.size(); ++i) v[static_cast<size_t>(i)] = a[i] + b[i];
    return Field(a.grid(), std::move(v));
}

inline Field operator-(const Field& a, const Field& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("field grids differ");
    std::vector<double> v(static_cast<size_t>(a.size()));
    for (int i = 0; i < a.size(); ++i) v[static_cast<size_t>(i)] = a[i] - b[i];
    return Field(a.grid(), std::move(v));
}

inline Field operator*(double c, const Field& a) {
    std::vector<double> v(static_cast<size_t>(a.size()));
    for (int i = 0; i < a.size(); ++i) v[static_cast<size_t>(i)] = c * a[i];
    return Field(a.grid(), std::move(v));
}

inline double sup_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace logdiff
