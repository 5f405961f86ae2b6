#pragma once

#include <algorithm>
#include <cmath>

#include "splitsolve/core/flux.hpp"
#include "splitsolve/core/measures.hpp"
#include "splitsolve/core/trajectory.hpp"

namespace splitsolve {

/// Worst violation of the one-sided slope bound dv/dx <= 1/(c t).
/// A concave flux is handled through the reflection x -> -x.
inline double oleinik_excess(const CellField& v, double t, double c, Convexity orientation) {
    if (!(t > 0.0)) fail(ErrorKind::invalid_argument, "oleinik_excess requires t > 0");
    if (!(c > 0.0)) fail(ErrorKind::invalid_argument, "oleinik_excess requires c > 0");
    const double bound = 1.0 / (c * t);
    const double sign = orientation == Convexity::concave ? -1.0 : 1.0;
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const double slope = sign * (v[i + 1] - v[i]) / v.grid.dx;
        worst = std::max(worst, slope - bound);
    }
    return worst;
}

/// Kruzkov L1 comparison:
///   max_t ( int_{-R}^{R} [u - v]^+  -  int_{-R-Lt}^{R+Lt} [u0 - v0]^+ ),  clipped at 0.
inline double comparison_defect(const Trajectory& u, const Trajectory& v, double R, double L) {
    if (u.size() != v.size() || !(u.grid() == v.grid()))
        fail(ErrorKind::invalid_argument, "comparison_defect: trajectories differ in grid or times");
    const Grid1D& g = u.grid();
    const CellField diff0 = zip_fields(u.front(), v.front(), [](double a, double b) { return a - b; });
    double worst = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (std::abs(u.times[k] - v.times[k]) > 1e-12)
            fail(ErrorKind::invalid_argument, "comparison_defect: record times differ");
        const double t = u.times[k];
        const Window outer{-R - L * t, R + L * t};
        if (!window_inside(g, outer))
            fail(ErrorKind::invalid_argument, "comparison window exceeds the domain");
        const CellField diff =
            zip_fields(u.fields[k], v.fields[k], [](double a, double b) { return a - b; });
        const double lhs = positive_part_mass(diff, Window::symmetric(R));
        const double rhs = positive_part_mass(diff0, outer);
        worst = std::max(worst, lhs - rhs);
    }
    return worst;
}

/// TV(v(t)) - TV(v(0)) maximised over record times, clipped at 0.
inline double tvd_defect(const Trajectory& v, const Window& window = Window::all()) {
    const double tv0 = total_variation(v.front(), window);
    double worst = 0.0;
    for (const auto& f : v.fields) worst = std::max(worst, total_variation(f, window) - tv0);
    return worst;
}

}  // namespace splitsolve
