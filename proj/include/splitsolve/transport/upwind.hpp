#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "splitsolve/core/field.hpp"
#include "splitsolve/core/trajectory.hpp"
#include "splitsolve/scalar/solver.hpp"

namespace splitsolve {


struct WeightedNorm {
    double value = 0.0;
    bool infinite = false;  // some cell has p = 0 but w != 0
};

/// Least C with |w| <= C p cell-wise.
inline WeightedNorm weighted_sup_norm(const CellField& w, const CellField& p) {
    if (!same_grid(w, p)) fail(ErrorKind::invalid_argument, "grid mismatch");
    WeightedNorm out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0.0) continue;
        if (p[i] == 0.0) {
            out.infinite = true;
            out.value = std::numeric_limits<double>::infinity();
            continue;
        }
        out.value = std::max(out.value, std::abs(w[i]) / std::abs(p[i]));
    }
    return out;
}

namespace detail {

// lambda = w / v with 0/0 := 0; a mass sitting on v = 0 is not transported.
inline double lambda_of(double w, double v) { return v == 0.0 ? 0.0 : w / v; }

inline bool in_class(double w, double v) { return v != 0.0 || w == 0.0; }

}  // namespace detail

/// One step of d_t w + d_x(b w) = 0 driven by the density step prev_v -> next_v
/// that used interface fluxes G. The flux for w is G^+ lambda_left + G^- lambda_right.
///
/// The new lambda is a convex combination of the stencil lambdas whenever the
/// positivity coefficient v_i - r (G^+_{i+1/2} - G^-_{i-1/2}) is nonnegative,
/// so it is clipped to their hull; w = lambda * v then reproduces w = c v exactly.
inline void lambda_upwind_step(const CellField& prev_v, const CellField& next_v,
                               const std::vector<double>& G, double ratio, const CellField& prev_w,
                               CellField& next_w, std::size_t step_index) {
    const std::size_t n = prev_v.size();
    std::vector<double> F(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        const long left = static_cast<long>(j) - 1, right = static_cast<long>(j);
        const double g = G[j];
        const double lam_l = detail::lambda_of(prev_w.ghost(left), prev_v.ghost(left));
        const double lam_r = detail::lambda_of(prev_w.ghost(right), prev_v.ghost(right));
        F[j] = g > 0.0 ? g * lam_l : (g < 0.0 ? g * lam_r : 0.0);
    }
    next_w.grid = prev_w.grid;
    next_w.boundary = prev_w.boundary;
    next_w.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double vi = prev_v.values[i];
        const double coeff = vi - ratio * (std::max(G[i + 1], 0.0) - std::min(G[i], 0.0));
        if (coeff < -1e-12 * (1.0 + std::abs(vi)))
            fail(ErrorKind::numerical_blowup, "transport step " + std::to_string(step_index) +
                                                  " violates positivity at cell " + std::to_string(i) +
                                                  " (CFL too large for the velocity?)");
        const double w_cons = prev_w.values[i] - ratio * (F[i + 1] - F[i]);
        if (!std::isfinite(w_cons))
            fail(ErrorKind::numerical_blowup,
                 "nonfinite transported value at step " + std::to_string(step_index));
        const double v_new = next_v.values[i];
        const long li = static_cast<long>(i);
        bool stencil_in_class = true;
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (long j = li - 1; j <= li + 1; ++j) {
            const double wj = prev_w.ghost(j), vj = prev_v.ghost(j);
            stencil_in_class = stencil_in_class && detail::in_class(wj, vj);
            const double lam = detail::lambda_of(wj, vj);
            lo = std::min(lo, lam);
            hi = std::max(hi, lam);
        }
        if (v_new == 0.0 || !stencil_in_class) {
            next_w.values[i] = w_cons;
        } else {
            next_w.values[i] = std::clamp(w_cons / v_new, lo, hi) * v_new;
        }
    }
}

/// Advances w0 in lockstep with a recorded density trajectory.
///
/// v_traj must come from solve_scalar with record_steps; the density is
/// replayed step by step from its initial field and checked against every
/// stored snapshot. b_of_v is the transport velocity as a function of the
/// density; it is only used to check the step restriction.
inline Trajectory solve_continuity_upwind(const Trajectory& v_traj,
                                          const std::function<double(double)>& b_of_v,
                                          const CellField& w0) {
    if (v_traj.empty()) fail(ErrorKind::invalid_argument, "empty density trajectory");
    if (!same_grid(v_traj.front(), w0))
        fail(ErrorKind::invalid_argument, "w0 and the density trajectory use different grids");
    if (w0.boundary != v_traj.front().boundary)
        fail(ErrorKind::invalid_argument, "w0 and the density use different boundary policies");
    if (!w0.all_finite()) fail(ErrorKind::invalid_argument, "w0 must be finite");
    if (v_traj.steps.empty() && v_traj.size() > 1)
        fail(ErrorKind::invalid_argument, "density trajectory has no recorded steps");

    Trajectory out;
    out.meta["scheme"] = "lambda-upwind";
    out.push(v_traj.times.front(), w0);
    CellField v = v_traj.front(), v_next = v, w = w0, w_next = w0;
    const double dx = w0.grid.dx;
    std::size_t rec = 1;
    for (std::size_t s = 0; s < v_traj.steps.size(); ++s) {
        const StepRecord& st = v_traj.steps[s];
        if (st.fluxes.size() != v.size() + 1)
            fail(ErrorKind::invalid_argument, "recorded step " + std::to_string(s) + " has wrong flux count");
        const double r = st.dt / dx;
        if (b_of_v) {
            double bmax = 0.0;
            for (double vi : v.values) bmax = std::max(bmax, std::abs(b_of_v(vi)));
            if (r * bmax > 1.0 + 1e-12)
                fail(ErrorKind::invalid_argument,
                     "density steps are too long for the transport velocity; solve it with a coupled CFL");
        }
        conservative_update(v, st.fluxes, r, v_next, s);
        lambda_upwind_step(v, v_next, st.fluxes, r, w, w_next, s);
        std::swap(v, v_next);
        std::swap(w, w_next);
        if (st.record) {
            if (rec >= v_traj.size() || v.values != v_traj.fields[rec].values)
                fail(ErrorKind::invalid_argument, "step schedule does not reproduce the density trajectory");
            out.push(v_traj.times[rec], w);
            ++rec;
        }
    }
    if (rec != v_traj.size())
        fail(ErrorKind::invalid_argument, "step schedule does not reach every record time");
    return out;
}

/// Velocity 1/(1+v) of the chromatography transport stage.
inline double chromatography_velocity(double v) { return 1.0 / (1.0 + v); }

/// ScalarConfig::coupled_speed for a velocity monotone in v on the range.
inline std::function<double(double, double)> coupled_velocity_bound(std::function<double(double)> b) {
    return [b = std::move(b)](double lo, double hi) {
        double m = std::max(std::abs(b(lo)), std::abs(b(hi)));
        for (int k = 1; k < 16; ++k) m = std::max(m, std::abs(b(lo + (hi - lo) * k / 16.0)));
        return m;
    };
}

}  // namespace splitsolve
