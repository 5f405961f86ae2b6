#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "splitsolve/core/measures.hpp"
#include "splitsolve/core/test_function.hpp"
#include "splitsolve/core/trajectory.hpp"
#include "splitsolve/transport/characteristics.hpp"

namespace splitsolve {

/// u = w / rho cell-wise with 0/0 := 0, at every record time.
inline Trajectory ratio_trajectory(const Trajectory& w, const Trajectory& rho) {
    if (w.size() != rho.size()) fail(ErrorKind::invalid_argument, "record times differ");
    Trajectory out;
    for (std::size_t k = 0; k < w.size(); ++k)
        out.push(w.times[k], zip_fields(w.fields[k], rho.fields[k],
                                        [](double a, double p) { return p == 0.0 ? 0.0 : a / p; }));
    return out;
}

/// max over tests of |int int rho beta(u) phi_t + b rho beta(u) phi_x|.
inline double renorm_residual(const TransportPair& pair, const Trajectory& u,
                              const std::function<double(double)>& beta,
                              const std::vector<TestFunction>& tests) {
    validate_pair(pair);
    if (u.size() != pair.rho.size() || !same_grid(u.front(), pair.rho.front()))
        fail(ErrorKind::invalid_argument, "u is not sampled like the pair");
    for (std::size_t k = 0; k < u.size(); ++k)
        if (std::abs(u.times[k] - pair.times()[k]) > 1e-12 * (1.0 + u.times[k]))
            fail(ErrorKind::invalid_argument, "u is not sampled at the pair's record times");
    std::vector<std::vector<double>> dens(u.size()), flux(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        const std::size_t n = u.fields[k].size();
        dens[k].resize(n);
        flux[k].resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            dens[k][i] = pair.rho.fields[k][i] * beta(u.fields[k][i]);
            flux[k][i] = pair.b.fields[k][i] * dens[k][i];
        }
    }
    double worst = 0.0;
    for (const auto& tf : tests) {
        const double r = weak_integral(
            u.grid(), u.times, tf, [&](std::size_t k, std::size_t i) { return dens[k][i]; },
            [&](std::size_t k, std::size_t i) { return flux[k][i]; });
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

/// Weak residual of d_t rho + d_x(b rho) = 0 itself.
inline double continuity_residual(const TransportPair& pair, const std::vector<TestFunction>& tests) {
    Trajectory ones;
    for (std::size_t k = 0; k < pair.rho.size(); ++k)
        ones.push(pair.times()[k], CellField::constant(pair.grid(), 1.0));
    return renorm_residual(pair, ones, [](double) { return 1.0; }, tests);
}

/// Samples (t, ||u(t) - u(t0)||_{L1(window)}) for every record time.
inline std::vector<std::pair<double, double>> strong_continuity_modulus(const Trajectory& traj, double t0,
                                                                        const Window& window = Window::all()) {
    const CellField& ref = traj.fields[traj.index_of(t0)];
    std::vector<std::pair<double, double>> out;
    out.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k)
        out.emplace_back(traj.times[k], lp_distance(traj.fields[k], ref, Norm::l1, window));
    return out;
}

/// Centred difference of b; in one dimension the divergence is d_x b.
inline CellField discrete_divergence(const CellField& b) {
    CellField out = b;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const long li = static_cast<long>(i);
        out.values[i] = (b.ghost(li + 1) - b.ghost(li - 1)) / (2.0 * b.grid.dx);
    }
    return out;
}

/// Finite-difference Jacobian dY/dy of the flow from t0 to t1 at each x.
inline std::vector<double> flow_jacobian(const VelocityHistory& vel, double t0, double t1,
                                         const std::vector<double>& xs, double delta) {
    std::vector<double> plus(xs), minus(xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        plus[i] += delta;
        minus[i] -= delta;
    }
    const auto yp = flow_points(vel, t0, t1, plus);
    const auto ym = flow_points(vel, t0, t1, minus);
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (yp[i] - ym[i]) / (2.0 * delta);
    return out;
}

}  // namespace splitsolve
