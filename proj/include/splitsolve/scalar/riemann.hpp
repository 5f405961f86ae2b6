#pragma once

#include <algorithm>
#include <cmath>

#include "splitsolve/core/flux.hpp"

namespace splitsolve {

/// Godunov interface flux: min of g over [a, b] if a <= b, max over [b, a] otherwise.
inline double godunov_flux(const FluxFunction& f, double a, double b) {
    if (a == b) return f.g(a);
    switch (f.convexity) {
        case Convexity::convex:
            if (a < b) {
                if (f.dg(a) >= 0.0) return f.g(a);
                if (f.dg(b) <= 0.0) return f.g(b);
                return f.g(f.stationary_point(a, b));
            }
            return std::max(f.g(a), f.g(b));
        case Convexity::concave:
            if (a < b) return std::min(f.g(a), f.g(b));
            if (f.dg(b) <= 0.0) return f.g(b);
            if (f.dg(a) >= 0.0) return f.g(a);
            return f.g(f.stationary_point(b, a));
        case Convexity::none: break;
    }
    // Sampled extremum with golden-section refinement around the best sample.
    const bool take_min = a < b;
    const double lo = std::min(a, b), hi = std::max(a, b);
    auto better = [take_min](double x, double y) { return take_min ? x < y : x > y; };
    constexpr int samples = 64;
    double best = f.g(lo);
    int best_k = 0;
    for (int k = 1; k <= samples; ++k) {
        const double v = f.g(lo + (hi - lo) * k / samples);
        if (better(v, best)) { best = v; best_k = k; }
    }
    double l = lo + (hi - lo) * std::max(best_k - 1, 0) / samples;
    double r = lo + (hi - lo) * std::min(best_k + 1, samples) / samples;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80; ++it) {
        const double m1 = r - phi * (r - l), m2 = l + phi * (r - l);
        if (better(f.g(m1), f.g(m2))) r = m2; else l = m1;
    }
    return take_min ? std::min(best, f.g(0.5 * (l + r))) : std::max(best, f.g(0.5 * (l + r)));
}

/// Self-similar entropy solution of a Riemann problem.
struct RiemannFan {
    enum class Kind { constant, shock, rarefaction };
    Kind kind = Kind::constant;
    double v_l = 0.0, v_r = 0.0;
    double speed = 0.0;                 // shock speed
    double xi_lo = 0.0, xi_hi = 0.0;    // rarefaction edge speeds
};

namespace detail {
// Orientation of g' between the states: +1 increasing (convex), -1 decreasing.
inline int derivative_orientation(const FluxFunction& f, double a, double b) {
    if (f.convexity == Convexity::convex) return 1;
    if (f.convexity == Convexity::concave) return -1;
    const double lo = std::min(a, b), hi = std::max(a, b);
    constexpr int samples = 64;
    int sign = 0;
    double prev = f.dg(lo);
    for (int k = 1; k <= samples; ++k) {
        const double d = f.dg(lo + (hi - lo) * k / samples);
        const int s = d > prev ? 1 : (d < prev ? -1 : 0);
        if (s == 0 || (sign != 0 && s != sign))
            fail(ErrorKind::unsupported_flux, "g' is not strictly monotone between the states");
        sign = s;
        prev = d;
    }
    return sign;
}
}  // namespace detail

inline RiemannFan riemann_fan(const FluxFunction& f, double v_l, double v_r) {
    RiemannFan fan;
    fan.v_l = v_l;
    fan.v_r = v_r;
    if (v_l == v_r) {
        fan.speed = f.dg(v_l);
        fan.xi_lo = fan.xi_hi = fan.speed;
        return fan;
    }
    const int orient = detail::derivative_orientation(f, v_l, v_r);
    // Lax admissibility: characteristics must enter the discontinuity.
    const bool shock = orient > 0 ? v_l > v_r : v_l < v_r;
    if (shock) {
        fan.kind = RiemannFan::Kind::shock;
        fan.speed = (f.g(v_r) - f.g(v_l)) / (v_r - v_l);
    } else {
        fan.kind = RiemannFan::Kind::rarefaction;
        fan.xi_lo = f.dg(v_l);
        fan.xi_hi = f.dg(v_r);
    }
    return fan;
}

/// Value of the fan at x / t = xi.
inline double riemann_eval(const FluxFunction& f, const RiemannFan& fan, double xi) {
    switch (fan.kind) {
        case RiemannFan::Kind::constant: return fan.v_l;
        case RiemannFan::Kind::shock: return xi < fan.speed ? fan.v_l : fan.v_r;
        case RiemannFan::Kind::rarefaction: {
            if (xi <= fan.xi_lo) return fan.v_l;
            if (xi >= fan.xi_hi) return fan.v_r;
            // g' runs monotonically from xi_lo at v_l to xi_hi at v_r.
            double a = fan.v_l, b = fan.v_r;
            for (int it = 0; it < 200 && std::abs(b - a) > 1e-13; ++it) {
                const double mid = 0.5 * (a + b);
                if (f.dg(mid) < xi) a = mid; else b = mid;
            }
            return 0.5 * (a + b);
        }
    }
    return fan.v_l;
}

inline double riemann_eval(const FluxFunction& f, double v_l, double v_r, double xi) {
    return riemann_eval(f, riemann_fan(f, v_l, v_r), xi);
}

}  // namespace splitsolve
