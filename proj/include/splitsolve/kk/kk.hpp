#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "splitsolve/core/flux.hpp"
#include "splitsolve/core/measures.hpp"
#include "splitsolve/core/system.hpp"
#include "splitsolve/scalar/solver.hpp"
#include "splitsolve/transport/diagnostics.hpp"
#include "splitsolve/transport/upwind.hpp"

namespace splitsolve {

/// Keyfitz-Kranzer state U in R^k; its modulus is kk_modulus(U).
using KKState = SystemState;

inline CellField kk_modulus(const KKState& U) {
    CellField rho = CellField::constant(U.grid(), 0.0, U[0].boundary);
    for (std::size_t i = 0; i < rho.size(); ++i) {
        double s = 0.0;
        for (const auto& c : U.components) s += c[i] * c[i];
        rho.values[i] = std::sqrt(s);
    }
    return rho;
}

/// Scalar flux rho f(rho) with c = min [rho f(rho)]'' measured on [lo, hi].
inline FluxFunction kk_flux(std::function<double(double)> f, std::function<double(double)> df, double lo, double hi) {
    if (!(lo >= 0.0 && hi >= lo)) fail(ErrorKind::invalid_argument, "kk flux range must satisfy 0 <= lo <= hi");
    const double span = std::max(hi - lo, 1e-3);
    auto g = [f](double r) { return r * f(r); };
    double c = std::numeric_limits<double>::infinity();
    const int samples = 64;
    const double h = 1e-3 * span;
    for (int k = 0; k <= samples; ++k) {
        const double r = lo + (hi - lo) * k / samples;
        // Central second difference; samples reach h outside [lo, hi].
        c = std::min(c, (g(r + h) - 2.0 * g(r) + g(r - h)) / (h * h));
    }
    if (!(c > 1e-8))
        fail(ErrorKind::invalid_flux, "[rho f(rho)]'' is not bounded below by a positive constant on [" +
                                          std::to_string(lo) + ", " + std::to_string(hi) + "] (min " +
                                          std::to_string(c) + ")");
    FluxFunction out;
    out.id = "keyfitz-kranzer";
    out.g = g;
    out.dg = [f, df](double r) { return f(r) + r * df(r); };
    out.convexity = Convexity::convex;
    out.c = c;
    out.admissible_lo = 0.0;
    return out;
}

struct KKConfig {
    double cfl = 0.45;
    double t_end = 1.0;
    std::vector<double> record_times;
    double fixed_dt = 0.0;
    /// |U0| must stay away from 0 on this window.
    Window window = Window::all();
};

struct KKTrajectory : SystemTrajectory {
    Trajectory rho;
    FluxFunction flux;
};

/// rho = |U| by Godunov on rho f(rho), then each U_i by lambda-upwind transport at b = f(rho).
inline KKTrajectory solve_kk(const KKState& U0, std::function<double(double)> f, std::function<double(double)> df,
                             const KKConfig& cfg) {
    U0.validate();
    const CellField rho0 = kk_modulus(U0);
    const CellRange r = cells_in(U0.grid(), cfg.window);
    if (r.empty()) fail(ErrorKind::invalid_argument, "window contains no cells");
    double wmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = r.first; i < r.last; ++i) wmin = std::min(wmin, rho0[i]);
    if (!(wmin > 0.0))
        fail(ErrorKind::hypothesis_violation, "vacuum in the data: |U0| vanishes on the window");

    KKTrajectory out;
    out.flux = kk_flux(f, df, rho0.min(), rho0.max());
    ScalarConfig sc;
    sc.cfl = cfg.cfl;
    sc.t_end = cfg.t_end;
    sc.record_times = cfg.record_times;
    sc.fixed_dt = cfg.fixed_dt;
    sc.record_steps = true;
    sc.coupled_speed = coupled_velocity_bound(f);
    out.rho = solve_scalar(out.flux, rho0, sc);
    std::vector<Trajectory> comps;
    for (const auto& c : U0.components) comps.push_back(solve_continuity_upwind(out.rho, f, c));
    for (std::size_t k = 0; k < out.rho.size(); ++k) {
        std::vector<CellField> s;
        for (const auto& c : comps) s.push_back(c.fields[k]);
        out.push(out.rho.times[k], KKState(std::move(s)));
    }
    out.meta = out.rho.meta;
    out.meta["system"] = "keyfitz-kranzer";
    out.meta["c"] = std::to_string(out.flux.c);
    out.rho.steps.clear();
    return out;
}

struct RenormalizationDefect {
    double pointwise_excess = 0.0;  // max (|U| - rho)^+
    double l1_gap = 0.0;            // max over times of || |U| - rho ||_L1(window)
};

inline RenormalizationDefect renormalization_defect(const KKTrajectory& traj, const Window& window = Window::all()) {
    RenormalizationDefect d;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const CellField mod = kk_modulus(traj.states[k]);
        const CellField& rho = traj.rho.fields[k];
        for (std::size_t i = 0; i < mod.size(); ++i) d.pointwise_excess = std::max(d.pointwise_excess, mod[i] - rho[i]);
        d.l1_gap = std::max(d.l1_gap, lp_distance(mod, rho, Norm::l1, window));
    }
    return d;
}

}  // namespace splitsolve
