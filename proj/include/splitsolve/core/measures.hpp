#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "splitsolve/core/field.hpp"

namespace splitsolve {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
        else comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
    CompensatedSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

namespace detail {
inline CellRange nonempty_range(const Grid1D& grid, const Window& window) {
    const CellRange r = cells_in(grid, window);
    if (r.empty()) fail(ErrorKind::invalid_argument, "window contains no cells");
    return r;
}
}  // namespace detail

/// Sum of |jumps| across interfaces whose both neighbours lie in the window.
inline double total_variation(const CellField& f, const Window& window = Window::all()) {
    const CellRange r = detail::nonempty_range(f.grid, window);
    CompensatedSum s;
    for (std::size_t i = r.first; i + 1 < r.last; ++i) s.add(std::abs(f[i + 1] - f[i]));
    return s.value();
}

inline double mass(const CellField& f, const Window& window = Window::all()) {
    const CellRange r = cells_in(f.grid, window);
    CompensatedSum s;
    for (std::size_t i = r.first; i < r.last; ++i) s.add(f[i]);
    return s.value() * f.grid.dx;
}

enum class Norm { l1, linf };

inline double lp_distance(const CellField& a, const CellField& b, Norm p,
                          const Window& window = Window::all()) {
    if (!same_grid(a, b)) fail(ErrorKind::invalid_argument, "lp_distance: grid mismatch");
    const CellRange r = cells_in(a.grid, window);
    if (p == Norm::linf) {
        double m = 0.0;
        for (std::size_t i = r.first; i < r.last; ++i) m = std::max(m, std::abs(a[i] - b[i]));
        return m;
    }
    CompensatedSum s;
    for (std::size_t i = r.first; i < r.last; ++i) s.add(std::abs(a[i] - b[i]));
    return s.value() * a.grid.dx;
}

inline double l1_norm(const CellField& a, const Window& window = Window::all()) {
    const CellRange r = cells_in(a.grid, window);
    CompensatedSum s;
    for (std::size_t i = r.first; i < r.last; ++i) s.add(std::abs(a[i]));
    return s.value() * a.grid.dx;
}

/// Discrete pairing sum_i f_i * phi(x_i) * dx.
inline double weak_pairing(const CellField& f, const std::function<double(double)>& phi) {
    CompensatedSum s;
    for (std::size_t i = 0; i < f.size(); ++i) s.add(f[i] * phi(f.grid.midpoint(i)));
    return s.value() * f.grid.dx;
}

/// Integral of [u]^+ over the window.
inline double positive_part_mass(const CellField& f, const Window& window) {
    const CellRange r = cells_in(f.grid, window);
    CompensatedSum s;
    for (std::size_t i = r.first; i < r.last; ++i) s.add(std::max(f[i], 0.0));
    return s.value() * f.grid.dx;
}

}  // namespace splitsolve
