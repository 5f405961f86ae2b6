#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "splitsolve/core/field.hpp"
#include "splitsolve/core/grid.hpp"
#include "splitsolve/core/trajectory.hpp"
#include "splitsolve/transport/mollify.hpp"

namespace splitsolve {

/// Velocity b and a transported density rho sampled at the same record times.
/// rho is declared to stay within [rho_lo, rho_hi] on `window`.
struct TransportPair {
    Trajectory b;
    Trajectory rho;
    double rho_lo = 0.0;
    double rho_hi = std::numeric_limits<double>::infinity();
    Window window = Window::all();
    /// Declared bound M with 1/M^2 <= dY/dy <= M^2 for the regularized flows.
    double jacobian_bound = std::numeric_limits<double>::infinity();

    const std::vector<double>& times() const { return rho.times; }
    const Grid1D& grid() const { return rho.grid(); }
};

inline void validate_pair(const TransportPair& pair) {
    if (pair.rho.empty() || pair.b.size() != pair.rho.size())
        fail(ErrorKind::invalid_argument, "velocity and density must share record times");
    for (std::size_t k = 0; k < pair.rho.size(); ++k) {
        if (pair.b.times[k] != pair.rho.times[k] || !same_grid(pair.b.fields[k], pair.rho.fields[k]))
            fail(ErrorKind::invalid_argument, "velocity and density must share record times and grid");
        const CellRange r = cells_in(pair.grid(), pair.window);
        for (std::size_t i = r.first; i < r.last; ++i) {
            const double p = pair.rho.fields[k][i];
            if (p < pair.rho_lo || p > pair.rho_hi)
                fail(ErrorKind::hypothesis_violation,
                     "density " + std::to_string(p) + " leaves its declared bounds at t = " +
                         std::to_string(pair.rho.times[k]));
        }
    }
}

/// Pair (b(v), v) from a density trajectory, with bounds measured on `window`.
inline TransportPair make_transport_pair(const Trajectory& v_traj, const std::function<double(double)>& b_of_v,
                                         const Window& window = Window::all()) {
    TransportPair pair;
    pair.rho = v_traj;
    pair.rho.steps.clear();
    pair.b.meta["field"] = "velocity";
    for (std::size_t k = 0; k < v_traj.size(); ++k)
        pair.b.push(v_traj.times[k], map_field(v_traj.fields[k], b_of_v));
    pair.window = window;
    const CellRange r = cells_in(v_traj.grid(), window);
    pair.rho_lo = std::numeric_limits<double>::infinity();
    pair.rho_hi = -pair.rho_lo;
    for (const auto& f : v_traj.fields)
        for (std::size_t i = r.first; i < r.last; ++i) {
            pair.rho_lo = std::min(pair.rho_lo, f[i]);
            pair.rho_hi = std::max(pair.rho_hi, f[i]);
        }
    return pair;
}

namespace detail {

// (b rho) * eta / rho * eta at one record index; the mollified density is returned too.
inline CellField regularized_at(const TransportPair& pair, const MollifierSpec& spec, std::size_t k,
                                CellField* rho_eps_out = nullptr) {
    const CellField& rho = pair.rho.fields[k];
    const CellField num = mollify(zip_fields(pair.b.fields[k], rho, [](double b, double p) { return b * p; }), spec);
    CellField den = mollify(rho, spec);
    const CellRange r = cells_in(pair.grid(), pair.window);
    CellField out = num;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (den[i] > 0.0) {
            out.values[i] = num[i] / den[i];
        } else if (i >= r.first && i < r.last) {
            fail(ErrorKind::degenerate_density, "mollified density vanishes at x = " +
                                                    std::to_string(pair.grid().midpoint(i)) +
                                                    ", t = " + std::to_string(pair.rho.times[k]));
        } else {
            out.values[i] = pair.b.fields[k][i];
        }
    }
    if (rho_eps_out) *rho_eps_out = std::move(den);
    return out;
}

// Bracketing record indices and weight for linear interpolation in time.
inline void time_bracket(const std::vector<double>& times, double t, std::size_t& k0, std::size_t& k1, double& w) {
    if (t <= times.front()) {
        k0 = k1 = 0;
        w = 0.0;
        return;
    }
    if (t >= times.back()) {
        k0 = k1 = times.size() - 1;
        w = 0.0;
        return;
    }
    k1 = static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
    k0 = k1 - 1;
    w = (t - times[k0]) / (times[k1] - times[k0]);
}

inline CellField blend(const CellField& a, const CellField& b, double w) {
    if (w == 0.0) return a;
    return zip_fields(a, b, [w](double x, double y) { return (1.0 - w) * x + w * y; });
}

}  // namespace detail

/// The regularized velocity b_eps at time t (linear in time between records).
inline CellField regularized_velocity(const TransportPair& pair, const MollifierSpec& spec, double t) {
    validate_pair(pair);
    std::size_t k0, k1;
    double w;
    detail::time_bracket(pair.times(), t, k0, k1, w);
    const CellField a = detail::regularized_at(pair, spec, k0);
    if (k0 == k1 || w == 0.0) return a;
    return detail::blend(a, detail::regularized_at(pair, spec, k1), w);
}

/// A velocity field known at increasing times, linear in time and space.
struct VelocityHistory {
    std::vector<double> times;
    std::vector<CellField> fields;
    double max_step = std::numeric_limits<double>::infinity();  // RK4 step cap
    double pad = 0.0;  // trajectories may leave the grid by at most this much

    double value(double t, double x) const {
        std::size_t k0, k1;
        double w;
        detail::time_bracket(times, t, k0, k1, w);
        const double a = interpolate(fields[k0], x);
        return w == 0.0 ? a : (1.0 - w) * a + w * interpolate(fields[k1], x);
    }

    static VelocityHistory constant(const Grid1D& g, double c, double t_end) {
        VelocityHistory h;
        h.times = {0.0, t_end};
        h.fields = {CellField::constant(g, c), CellField::constant(g, c)};
        h.pad = g.length();
        return h;
    }
};

/// Positions at t1 of the points starting at xs at t0 (t1 < t0 integrates backward).
inline std::vector<double> flow_points(const VelocityHistory& vel, double t0, double t1, std::vector<double> xs) {
    if (vel.fields.empty()) fail(ErrorKind::invalid_argument, "empty velocity history");
    const double span = t1 - t0;
    if (span == 0.0) return xs;
    const double cap = std::min(vel.max_step, std::abs(span));
    const auto steps = static_cast<std::size_t>(std::ceil(std::abs(span) / cap - 1e-12));
    const double h = span / static_cast<double>(std::max<std::size_t>(steps, 1));
    const Grid1D& g = vel.fields.front().grid;
    const double lo = g.x_min - vel.pad, hi = g.x_max + vel.pad;
    const bool periodic = vel.fields.front().boundary == Boundary::periodic;
    for (std::size_t s = 0; s < std::max<std::size_t>(steps, 1); ++s) {
        const double t = t0 + h * static_cast<double>(s);
        for (double& x : xs) {
            const double k1 = vel.value(t, x);
            const double k2 = vel.value(t + 0.5 * h, x + 0.5 * h * k1);
            const double k3 = vel.value(t + 0.5 * h, x + 0.5 * h * k2);
            const double k4 = vel.value(t + h, x + h * k3);
            x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (!periodic && (x < lo || x > hi || !std::isfinite(x)))
                fail(ErrorKind::out_of_domain, "characteristic left the padded domain at t = " +
                                                   std::to_string(t + h));
        }
    }
    return xs;
}

inline double flow_map(const VelocityHistory& vel, double t0, double t1, double x0) {
    return flow_points(vel, t0, t1, {x0}).front();
}

/// b_eps and rho_eps at every record time of the pair.
struct RegularizedPair {
    VelocityHistory velocity;
    std::vector<CellField> rho_eps;
};

inline RegularizedPair regularize(const TransportPair& pair, const MollifierSpec& spec) {
    validate_pair(pair);
    RegularizedPair out;
    out.velocity.times = pair.times();
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pair.rho.size(); ++k) {
        CellField den;
        out.velocity.fields.push_back(detail::regularized_at(pair, spec, k, &den));
        out.rho_eps.push_back(std::move(den));
        if (k > 0) min_gap = std::min(min_gap, pair.times()[k] - pair.times()[k - 1]);
    }
    out.velocity.max_step = std::min(min_gap, spec.epsilon / 4.0);
    out.velocity.pad = pair.grid().length();
    return out;
}

/// w(t) = lambda_bar(Z(t, x)) rho_eps(t, x) with lambda_bar = (w0 * eta) / rho_eps(0)
/// and Z the backward flow of the regularized velocity.
inline Trajectory solve_by_characteristics(const TransportPair& pair, const CellField& w0,
                                           const MollifierSpec& spec, const std::vector<double>& record_times) {
    if (!same_grid(w0, pair.rho.front()))
        fail(ErrorKind::invalid_argument, "w0 and the pair use different grids");
    const RegularizedPair reg = regularize(pair, spec);
    const CellField w_eps = mollify(w0, spec);
    CellField lambda_bar = w_eps;
    for (std::size_t i = 0; i < w_eps.size(); ++i) {
        const double den = reg.rho_eps.front()[i];
        lambda_bar.values[i] = den > 0.0 ? w_eps[i] / den : 0.0;
    }
    const Grid1D& g = w0.grid;
    std::vector<double> mids(g.n);
    for (std::size_t i = 0; i < g.n; ++i) mids[i] = g.midpoint(i);

    std::vector<double> ts = record_times;
    std::sort(ts.begin(), ts.end());
    Trajectory out;
    out.meta["scheme"] = "mollified-characteristics";
    out.meta["epsilon"] = std::to_string(spec.epsilon);
    const double t_first = pair.times().front(), t_last = pair.times().back();
    for (double t : ts) {
        if (t < t_first || t > t_last * (1.0 + 1e-12))
            fail(ErrorKind::invalid_argument, "record time " + std::to_string(t) + " outside the pair's time range");
        if (!out.empty() && t <= out.times.back()) continue;
        const std::vector<double> z = flow_points(reg.velocity, t, t_first, mids);
        std::size_t k0, k1;
        double w;
        detail::time_bracket(pair.times(), t, k0, k1, w);
        const CellField rho_t = detail::blend(reg.rho_eps[k0], reg.rho_eps[k1], w);
        CellField field = rho_t;
        for (std::size_t i = 0; i < g.n; ++i) field.values[i] = interpolate(lambda_bar, z[i]) * rho_t[i];
        out.push(t, std::move(field));
    }
    return out;
}

}  // namespace splitsolve
