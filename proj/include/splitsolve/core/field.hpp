#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "splitsolve/core/grid.hpp"

namespace splitsolve {

enum class Boundary { outflow, periodic, constant_extension };

/// Cell-averaged scalar values on a Grid1D at one instant.
struct CellField {
    Grid1D grid;
    std::vector<double> values;
    Boundary boundary = Boundary::constant_extension;

    CellField() = default;
    CellField(Grid1D g, std::vector<double> v, Boundary b = Boundary::constant_extension)
        : grid(g), values(std::move(v)), boundary(b) {
        if (values.size() != grid.n)
            fail(ErrorKind::invalid_argument, "field length does not match grid");
    }

    static CellField constant(const Grid1D& g, double c,
                              Boundary b = Boundary::constant_extension) {
        return CellField(g, std::vector<double>(g.n, c), b);
    }

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
    std::span<const double> span() const { return values; }

    /// Value at a possibly out-of-range index, resolved through the boundary
    /// policy (outflow and constant-extension both copy the edge cell).
    double ghost(long i) const {
        const long n = static_cast<long>(values.size());
        if (i >= 0 && i < n) return values[static_cast<std::size_t>(i)];
        if (boundary == Boundary::periodic) {
            long j = i % n;
            if (j < 0) j += n;
            return values[static_cast<std::size_t>(j)];
        }
        return i < 0 ? values.front() : values.back();
    }

    double min() const { return *std::min_element(values.begin(), values.end()); }
    double max() const { return *std::max_element(values.begin(), values.end()); }

    bool all_finite() const {
        return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
    }
};

inline bool same_grid(const CellField& a, const CellField& b) { return a.grid == b.grid; }

/// Samples f at cell midpoints.
inline CellField project(const std::function<double(double)>& f, const Grid1D& grid,
                         Boundary boundary = Boundary::constant_extension) {
    std::vector<double> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        v[i] = f(grid.midpoint(i));
        if (!std::isfinite(v[i]))
            fail(ErrorKind::invalid_argument,
                 "nonfinite sample at x = " + std::to_string(grid.midpoint(i)));
    }
    return CellField(grid, std::move(v), boundary);
}

/// Cell-wise map of one field.
template <class F>
CellField map_field(const CellField& a, F&& f) {
    CellField out = a;
    for (auto& v : out.values) v = f(v);
    return out;
}

/// Cell-wise combination of two fields on the same grid.
template <class F>
CellField zip_fields(const CellField& a, const CellField& b, F&& f) {
    if (!same_grid(a, b)) fail(ErrorKind::invalid_argument, "grid mismatch");
    CellField out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] = f(a.values[i], b.values[i]);
    return out;
}

/// Linear interpolation between cell midpoints, constant beyond the outer ones.
inline double interpolate(const CellField& f, double x) {
    const Grid1D& g = f.grid;
    const double s = (x - g.x_min) / g.dx - 0.5;
    if (f.boundary == Boundary::periodic) {
        const double fl = std::floor(s);
        const long i = static_cast<long>(fl);
        const double w = s - fl;
        return (1.0 - w) * f.ghost(i) + w * f.ghost(i + 1);
    }
    if (s <= 0.0) return f.values.front();
    const double last = static_cast<double>(g.n - 1);
    if (s >= last) return f.values.back();
    const auto i = static_cast<std::size_t>(s);
    const double w = s - static_cast<double>(i);
    return (1.0 - w) * f.values[i] + w * f.values[i + 1];
}

}  // namespace splitsolve
