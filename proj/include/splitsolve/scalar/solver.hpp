#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "splitsolve/core/field.hpp"
#include "splitsolve/core/flux.hpp"
#include "splitsolve/core/trajectory.hpp"
#include "splitsolve/scalar/riemann.hpp"

namespace splitsolve {

struct ScalarConfig {
    double cfl = 0.45;
    double t_end = 1.0;
    std::vector<double> record_times;  // 0 and t_end are always recorded
    double fixed_dt = 0.0;             // > 0 switches to fixed-step mode
    bool record_steps = false;         // keep per-step interface fluxes
    /// Extra speed that must respect the CFL bound, e.g. the velocity of a
    /// continuity equation advanced in lockstep. Receives the field range.
    std::function<double(double, double)> coupled_speed;
    std::size_t max_steps = 20'000'000;
};

/// dt = cfl * dx / L with L = sup |g'| over the field range (dt = cfl * dx if L = 0).
inline double cfl_dt(const FluxFunction& f, const CellField& field, double cfl) {
    const double L = f.speed_bound(field.min(), field.max());
    return L > 0.0 ? cfl * field.grid.dx / L : cfl * field.grid.dx;
}

namespace detail {

inline void godunov_fluxes(const FluxFunction& f, const CellField& v, std::vector<double>& out) {
    const long n = static_cast<long>(v.size());
    out.resize(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i)
        out[static_cast<std::size_t>(i)] = godunov_flux(f, v.ghost(i - 1), v.ghost(i));
}

}  // namespace detail

/// One conservative update v_i - ratio * (F_{i+1/2} - F_{i-1/2}).
///
/// The exact update of a monotone scheme lies in the hull of its three-cell
/// stencil; the result is clipped to that hull so rounding cannot break the
/// maximum principle. A clip larger than rounding means the step was not
/// monotone and is reported as a blow-up.
inline void conservative_update(const CellField& prev, const std::vector<double>& fluxes,
                                double ratio, CellField& next, std::size_t step_index) {
    const std::size_t n = prev.size();
    next.grid = prev.grid;
    next.boundary = prev.boundary;
    next.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double vi = prev.values[i];
        double updated = vi - ratio * (fluxes[i + 1] - fluxes[i]);
        const long li = static_cast<long>(i);
        const double a = prev.ghost(li - 1), b = prev.ghost(li + 1);
        const double lo = std::min({a, vi, b}), hi = std::max({a, vi, b});
        if (!std::isfinite(updated))
            fail(ErrorKind::numerical_blowup, "nonfinite value at step " + std::to_string(step_index) +
                                                  ", cell " + std::to_string(i));
        const double slack = 1e-10 * (1.0 + std::abs(lo) + std::abs(hi));
        if (updated < lo - slack || updated > hi + slack)
            fail(ErrorKind::numerical_blowup, "monotonicity lost at step " +
                                                  std::to_string(step_index) + " (CFL too large?)");
        next.values[i] = std::clamp(updated, lo, hi);
    }
}

namespace detail {

inline std::vector<double> record_schedule(const ScalarConfig& cfg) {
    std::vector<double> rec;
    for (double t : cfg.record_times)
        if (t > 0.0) rec.push_back(t);
    if (cfg.t_end > 0.0) rec.push_back(cfg.t_end);
    std::sort(rec.begin(), rec.end());
    std::vector<double> out;
    for (double t : rec)
        if (out.empty() || t - out.back() > 1e-13 * (1.0 + t)) out.push_back(t);
        else out.back() = std::max(out.back(), t);
    return out;
}

inline long aligned_steps(double t, double dt) {
    const double q = t / dt;
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-9 * std::max(1.0, r))
        fail(ErrorKind::invalid_argument,
             "record time " + std::to_string(t) + " is not a multiple of the fixed step");
    return static_cast<long>(r);
}

inline double speed_of(const FluxFunction& f, const ScalarConfig& cfg, double lo, double hi) {
    double L = f.speed_bound(lo, hi);
    if (cfg.coupled_speed) L = std::max(L, cfg.coupled_speed(lo, hi));
    return L;
}

}  // namespace detail

/// Explicit Godunov scheme for d_t v + d_x g(v) = 0.
inline Trajectory solve_scalar(const FluxFunction& f, const CellField& init, const ScalarConfig& cfg) {
    if (!(cfg.cfl > 0.0 && cfg.cfl < 1.0))
        fail(ErrorKind::invalid_argument, "cfl must lie in (0, 1)");
    if (!init.all_finite()) fail(ErrorKind::invalid_argument, "initial data must be finite");
    if (!f.admissible(init.min()) || !f.admissible(init.max()))
        fail(ErrorKind::invalid_argument, "initial data outside the admissible range of flux '" +
                                              f.id + "'");

    const std::vector<double> records = detail::record_schedule(cfg);
    Trajectory traj;
    traj.meta["flux"] = f.id;
    traj.meta["scheme"] = "godunov";
    traj.push(0.0, init);

    const double dx = init.grid.dx;
    const bool fixed = cfg.fixed_dt > 0.0;
    if (fixed) {
        const double L = detail::speed_of(f, cfg, init.min(), init.max());
        if (cfg.fixed_dt * L / dx > 0.5)
            fail(ErrorKind::invalid_argument, "fixed step violates the monotonicity bound dt*L/dx <= 1/2");
        traj.meta["step_mode"] = "fixed";
    } else {
        traj.meta["step_mode"] = "adaptive";
    }

    CellField cur = init, next = init;
    std::vector<double> fluxes;
    double t = 0.0;
    long step = 0;
    for (double t_rec : records) {
        const long target_step = fixed ? detail::aligned_steps(t_rec, cfg.fixed_dt) : 0;
        while (fixed ? step < target_step : t < t_rec) {
            double dt;
            bool lands = false;
            if (fixed) {
                dt = cfg.fixed_dt;
                lands = step + 1 == target_step;
            } else {
                const double L = detail::speed_of(f, cfg, cur.min(), cur.max());
                dt = L > 0.0 ? cfg.cfl * dx / L : cfg.cfl * dx;
                if (t + dt >= t_rec - 1e-12 * dt) {
                    dt = t_rec - t;
                    lands = true;
                }
            }
            detail::godunov_fluxes(f, cur, fluxes);
            conservative_update(cur, fluxes, dt / dx, next, static_cast<std::size_t>(step));
            if (cfg.record_steps) traj.steps.push_back(StepRecord{t, dt, fluxes, lands});
            std::swap(cur, next);
            ++step;
            t = fixed ? static_cast<double>(step) * cfg.fixed_dt : (lands ? t_rec : t + dt);
            if (static_cast<std::size_t>(step) > cfg.max_steps)
                fail(ErrorKind::numerical_blowup, "step budget exhausted");
        }
        traj.push(t_rec, cur);
    }
    traj.meta["steps"] = std::to_string(step);
    return traj;
}

}  // namespace splitsolve
