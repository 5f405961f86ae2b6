#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "splitsolve/error.hpp"

namespace splitsolve {

/// Uniform partition of [x_min, x_max) into n cells of width dx.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t n = 2;
    double dx = 0.5;

    double left_edge(std::size_t i) const { return x_min + static_cast<double>(i) * dx; }
    double midpoint(std::size_t i) const { return x_min + (static_cast<double>(i) + 0.5) * dx; }
    double length() const { return x_max - x_min; }

    friend bool operator==(const Grid1D& a, const Grid1D& b) {
        return a.x_min == b.x_min && a.x_max == b.x_max && a.n == b.n;
    }
};

inline Grid1D make_grid(double x_min, double x_max, std::size_t n) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max))
        fail(ErrorKind::invalid_argument, "grid bounds must be finite");
    if (!(x_min < x_max))
        fail(ErrorKind::invalid_argument, "grid requires x_min < x_max");
    if (n < 2) fail(ErrorKind::invalid_argument, "grid requires at least 2 cells");
    return Grid1D{x_min, x_max, n, (x_max - x_min) / static_cast<double>(n)};
}

/// Closed spatial window [lo, hi]; a cell belongs to it when its midpoint does.
struct Window {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    static Window all() { return {}; }
    static Window symmetric(double r) { return {-r, r}; }
};

/// Half-open cell index range [first, last).
struct CellRange {
    std::size_t first = 0;
    std::size_t last = 0;

    bool empty() const { return last <= first; }
    std::size_t size() const { return empty() ? 0 : last - first; }
};

inline CellRange cells_in(const Grid1D& grid, const Window& window) {
    // Midpoint test with a relative slack so that windows placed exactly on
    // midpoints are inclusive regardless of rounding.
    const double slack = 1e-9 * grid.dx;
    CellRange r{grid.n, 0};
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double xm = grid.midpoint(i);
        if (xm >= window.lo - slack && xm <= window.hi + slack) {
            if (r.first == grid.n) r.first = i;
            r.last = i + 1;
        }
    }
    if (r.first == grid.n) r.first = r.last = 0;
    return r;
}

/// True when [lo, hi] lies inside the grid's domain.
inline bool window_inside(const Grid1D& grid, const Window& window) {
    return window.lo >= grid.x_min - 1e-12 && window.hi <= grid.x_max + 1e-12;
}

}  // namespace splitsolve
