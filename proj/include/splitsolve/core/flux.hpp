#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "splitsolve/error.hpp"

namespace splitsolve {

enum class Convexity { convex, concave, none };

/// Scalar flux g with its derivative and the shape data the solvers rely on.
///
/// For convex or concave fluxes g' is monotone, so the speed bound over an
/// interval is attained at an endpoint; otherwise it is sampled.
struct FluxFunction {
    std::string id;
    std::function<double(double)> g;
    std::function<double(double)> dg;
    Convexity convexity = Convexity::none;
    double c = 0.0;  // uniform convexity (or concavity) constant on the admissible range
    double admissible_lo = -std::numeric_limits<double>::infinity();
    double admissible_hi = std::numeric_limits<double>::infinity();
    std::optional<double> stationary;  // root of g', when known in closed form

    double operator()(double v) const { return g(v); }

    bool admissible(double v) const { return v >= admissible_lo && v <= admissible_hi; }

    /// sup |g'| over [lo, hi].
    double speed_bound(double lo, double hi) const {
        if (lo > hi) std::swap(lo, hi);
        if (convexity != Convexity::none) return std::max(std::abs(dg(lo)), std::abs(dg(hi)));
        double s = 0.0;
        constexpr int samples = 256;
        for (int k = 0; k <= samples; ++k) {
            const double z = lo + (hi - lo) * k / samples;
            s = std::max(s, std::abs(dg(z)));
        }
        return s;
    }

    /// Root of g' inside [a, b] (a < b), assuming a sign change.
    double stationary_point(double a, double b) const {
        if (stationary && *stationary >= a && *stationary <= b) return *stationary;
        double lo = a, hi = b;
        const bool increasing = dg(b) > dg(a);
        for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            const double d = dg(mid);
            if ((d < 0.0) == increasing) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    }
};

/// g(v) = v / (1 + v): the scalar part of the chromatography system.
inline FluxFunction chromatography_flux() {
    FluxFunction f;
    f.id = "chromatography";
    f.g = [](double v) { return v / (1.0 + v); };
    f.dg = [](double v) { return 1.0 / ((1.0 + v) * (1.0 + v)); };
    f.convexity = Convexity::concave;
    f.c = 0.0;  // g'' = -2/(1+v)^3 is not bounded away from 0 on [0, inf)
    f.admissible_lo = 0.0;
    return f;
}

/// g(v) = v^2 (uniformly convex, c = 2).
inline FluxFunction burgers_flux() {
    FluxFunction f;
    f.id = "burgers";
    f.g = [](double v) { return v * v; };
    f.dg = [](double v) { return 2.0 * v; };
    f.convexity = Convexity::convex;
    f.c = 2.0;
    f.stationary = 0.0;
    return f;
}

/// Uniform concavity constant of the chromatography flux on [0, vmax].
inline double chromatography_concavity(double vmax) {
    return 2.0 / std::pow(1.0 + vmax, 3);
}

/// Minimum of the centred second difference of g on [lo, hi].
inline double measured_curvature(const FluxFunction& f, double lo, double hi, int samples = 200) {
    const double h = 1e-4 * std::max(1.0, hi - lo);
    double cmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= samples; ++k) {
        const double z = lo + (hi - lo) * k / samples;
        const double d2 = (f.g(z + h) - 2.0 * f.g(z) + f.g(z - h)) / (h * h);
        cmin = std::min(cmin, d2);
    }
    return cmin;
}

/// Spot-checks the declared convexity constant by finite differences.
inline bool convexity_consistent(const FluxFunction& f, double lo, double hi) {
    const double tol = 1e-4 * (1.0 + f.c);
    switch (f.convexity) {
        case Convexity::convex: return measured_curvature(f, lo, hi) >= f.c - tol;
        case Convexity::concave: {
            FluxFunction neg = f;
            neg.g = [g = f.g](double v) { return -g(v); };
            return measured_curvature(neg, lo, hi) >= f.c - tol;
        }
        case Convexity::none: return true;
    }
    return true;
}

}  // namespace splitsolve
