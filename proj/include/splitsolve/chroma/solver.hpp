#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "splitsolve/chroma/state.hpp"
#include "splitsolve/core/system.hpp"
#include "splitsolve/scalar/solver.hpp"
#include "splitsolve/transport/upwind.hpp"

namespace splitsolve {

struct ChromaConfig {
    double cfl = 0.45;
    double t_end = 1.0;
    std::vector<double> record_times;
    double fixed_dt = 0.0;
    /// Window on which the G regime (v0 bounded away from 0) is assessed.
    Window regime_window = Window::all();
};

/// Component trajectory plus the split variables it was built from.
struct ChromTrajectory : SystemTrajectory {
    Trajectory v;
    std::vector<Trajectory> w;
};

inline ScalarConfig chroma_scalar_config(const ChromaConfig& cfg) {
    ScalarConfig sc;
    sc.cfl = cfg.cfl;
    sc.t_end = cfg.t_end;
    sc.record_times = cfg.record_times;
    sc.fixed_dt = cfg.fixed_dt;
    sc.record_steps = true;
    sc.coupled_speed = coupled_velocity_bound(chromatography_velocity);
    return sc;
}

/// v by Godunov on v/(1+v), each w_i = u_{i+1} by lambda-upwind transport at b = 1/(1+v).
inline ChromTrajectory solve_chromatography(const ChromState& U0, const ChromaConfig& cfg) {
    U0.validate();
    if (U0.min_component() < 0.0)
        fail(ErrorKind::invalid_argument, "chromatography data must have nonnegative components");
    const VW vw0 = to_vw(U0);

    ChromTrajectory out;
    out.v = solve_scalar(chromatography_flux(), vw0.v, chroma_scalar_config(cfg));
    for (const auto& w0 : vw0.w) out.w.push_back(solve_continuity_upwind(out.v, chromatography_velocity, w0));
    for (std::size_t k = 0; k < out.v.size(); ++k) {
        VW vw{out.v.fields[k], {}};
        for (const auto& w : out.w) vw.w.push_back(w.fields[k]);
        out.push(out.v.times[k], from_vw(vw));
    }
    const CellRange r = cells_in(vw0.v.grid, cfg.regime_window);
    double vmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = r.first; i < r.last; ++i) vmin = std::min(vmin, vw0.v[i]);
    out.meta = out.v.meta;
    out.meta["system"] = "chromatography";
    out.meta["components"] = std::to_string(U0.k());
    out.meta["regime"] = vmin > 0.0 ? "F,G" : "F";
    out.meta["min_v0"] = std::to_string(vmin);
    out.meta["tv_v0"] = std::to_string(total_variation(vw0.v));
    return out;
}

/// F(U)_i = u_i / (1 + sum u).
inline std::vector<double> chromatography_system_flux(const std::vector<double>& u) {
    double s = 1.0;
    for (double x : u) s += x;
    std::vector<double> f(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) f[i] = u[i] / s;
    return f;
}

struct DirectConfig {
    double cfl = 0.9;
    double t_end = 1.0;
    std::vector<double> record_times;
};

/// Lax-Friedrichs on the untransformed system.
inline SystemTrajectory solve_direct(const ChromState& U0, const DirectConfig& cfg) {
    U0.validate();
    if (U0.min_component() < 0.0)
        fail(ErrorKind::invalid_argument, "chromatography data must have nonnegative components");
    if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) fail(ErrorKind::invalid_argument, "cfl must lie in (0, 1]");
    ScalarConfig sched;
    sched.t_end = cfg.t_end;
    sched.record_times = cfg.record_times;
    const auto records = detail::record_schedule(sched);

    const std::size_t k = U0.k(), n = U0.grid().n;
    const double dx = U0.grid().dx;
    SystemTrajectory out;
    out.meta["system"] = "chromatography";
    out.meta["scheme"] = "lax-friedrichs";
    out.push(0.0, U0);
    // u[j][i] with one ghost cell on each side.
    std::vector<std::vector<double>> u(k, std::vector<double>(n + 2)), next = u, flux = u;
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) u[j][i + 1] = U0[j][i];
    const bool periodic = U0[0].boundary == Boundary::periodic;
    auto fill_ghosts = [&](std::vector<std::vector<double>>& a) {
        for (auto& c : a) {
            c[0] = periodic ? c[n] : c[1];
            c[n + 1] = periodic ? c[1] : c[n];
        }
    };
    double t = 0.0;
    long step = 0;
    for (double t_rec : records) {
        while (t < t_rec) {
            fill_ghosts(u);
            double speed = 0.0;
            for (std::size_t i = 0; i < n + 2; ++i) {
                double s = 1.0;
                for (std::size_t j = 0; j < k; ++j) s += u[j][i];
                speed = std::max(speed, 1.0 / s);
                for (std::size_t j = 0; j < k; ++j) flux[j][i] = u[j][i] / s;
            }
            double dt = cfg.cfl * dx / speed;
            bool lands = false;
            if (t + dt >= t_rec - 1e-12 * dt) {
                dt = t_rec - t;
                lands = true;
            }
            const double r = dt / dx;
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t i = 1; i <= n; ++i) {
                    const double val = 0.5 * (u[j][i - 1] + u[j][i + 1]) - 0.5 * r * (flux[j][i + 1] - flux[j][i - 1]);
                    if (!std::isfinite(val))
                        fail(ErrorKind::numerical_blowup, "nonfinite value at step " + std::to_string(step));
                    next[j][i] = val;
                }
            std::swap(u, next);
            ++step;
            t = lands ? t_rec : t + dt;
        }
        std::vector<CellField> comps;
        for (std::size_t j = 0; j < k; ++j)
            comps.emplace_back(U0.grid(), std::vector<double>(u[j].begin() + 1, u[j].end() - 1), U0[j].boundary);
        out.push(t_rec, SystemState(std::move(comps)));
    }
    out.meta["steps"] = std::to_string(step);
    return out;
}

/// L1 distance between S(t + s) U0 and S(t) S(s) U0 in fixed-step mode.
inline double semigroup_defect(const ChromState& U0, double t, double s, const ChromaConfig& cfg) {
    if (!(cfg.fixed_dt > 0.0)) fail(ErrorKind::invalid_argument, "semigroup checks need fixed-step mode");
    if (t < 0.0 || s < 0.0) fail(ErrorKind::invalid_argument, "times must be nonnegative");
    detail::aligned_steps(t, cfg.fixed_dt);
    detail::aligned_steps(s, cfg.fixed_dt);
    if (t == 0.0 || s == 0.0) return 0.0;
    auto run = [&](const ChromState& U, double T) {
        ChromaConfig c = cfg;
        c.t_end = T;
        c.record_times.clear();
        return solve_chromatography(U, c).back();
    };
    return state_distance(run(U0, t + s), run(run(U0, s), t));
}

}  // namespace splitsolve
