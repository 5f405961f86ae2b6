#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "splitsolve/core/flux.hpp"
#include "splitsolve/core/test_function.hpp"
#include "splitsolve/core/trajectory.hpp"

namespace splitsolve {

/// Scalar entropy / entropy-flux pair (eta, q) with q' = eta' g'.
struct ScalarEntropyPair {
    std::string name;
    std::function<double(double)> eta;
    std::function<double(double)> q;
};

/// Kruzkov pair eta = |v - k|, q = sign(v - k) (g(v) - g(k)).
inline ScalarEntropyPair kruzkov_pair(const FluxFunction& f, double k) {
    return {"kruzkov(" + std::to_string(k) + ")",
            [k](double v) { return std::abs(v - k); },
            [g = f.g, k](double v) {
                const double s = v > k ? 1.0 : (v < k ? -1.0 : 0.0);
                return s * (g(v) - g(k));
            }};
}

namespace detail {
// 16-point Gauss-Legendre nodes/weights on [-1, 1].
inline constexpr std::array<double, 8> gl16_nodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
inline constexpr std::array<double, 8> gl16_weights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

inline double gauss_legendre(const std::function<double(double)>& h, double a, double b,
                             int panels = 4) {
    double total = 0.0;
    const double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * w;
        const double mid = lo + 0.5 * w, half = 0.5 * w;
        for (std::size_t k = 0; k < gl16_nodes.size(); ++k)
            total += gl16_weights[k] * half *
                     (h(mid + half * gl16_nodes[k]) + h(mid - half * gl16_nodes[k]));
    }
    return total;
}
}  // namespace detail

/// Builds q(v) = int_{v0}^{v} eta'(s) g'(s) ds by Gauss-Legendre quadrature.
inline ScalarEntropyPair entropy_pair_from_derivative(std::string name,
                                                      std::function<double(double)> eta,
                                                      std::function<double(double)> deta,
                                                      const FluxFunction& f, double v0 = 0.0) {
    auto integrand = [deta, dg = f.dg](double s) { return deta(s) * dg(s); };
    return {std::move(name), std::move(eta), [integrand, v0](double v) {
                return v == v0 ? 0.0 : detail::gauss_legendre(integrand, v0, v, 8);
            }};
}

/// Max over samples of |q'(v) - eta'(v) g'(v)| with centred differences.
inline double scalar_pair_defect(const ScalarEntropyPair& pair, const FluxFunction& f,
                                 const std::vector<double>& samples) {
    double worst = 0.0;
    for (double v : samples) {
        const double h = 1e-5 * std::max(1.0, std::abs(v));
        const double deta = (pair.eta(v + h) - pair.eta(v - h)) / (2.0 * h);
        const double dq = (pair.q(v + h) - pair.q(v - h)) / (2.0 * h);
        worst = std::max(worst, std::abs(dq - deta * f.dg(v)));
    }
    return worst;
}

/// Positive part of  -int int eta(v) phi_t + q(v) phi_x,  maximised over test functions.
/// Entropy admissibility requires this to vanish up to discretisation error.
inline double entropy_residual(const Trajectory& traj, const ScalarEntropyPair& pair,
                               const std::vector<TestFunction>& tests) {
    for (const auto& tf : tests)
        if (tf.t_lo <= 0.0)
            fail(ErrorKind::invalid_argument, "test function support must avoid t = 0");
    // Entropy and flux values are reused across test functions.
    std::vector<std::vector<double>> eta(traj.size()), q(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const auto& vals = traj.fields[k].values;
        eta[k].resize(vals.size());
        q[k].resize(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i) {
            eta[k][i] = pair.eta(vals[i]);
            q[k][i] = pair.q(vals[i]);
        }
    }
    double worst = 0.0;
    for (const auto& tf : tests) {
        const double w = weak_integral(
            traj.grid(), traj.times, tf, [&](std::size_t k, std::size_t i) { return eta[k][i]; },
            [&](std::size_t k, std::size_t i) { return q[k][i]; });
        worst = std::max(worst, -w);
    }
    return std::max(worst, 0.0);
}

}  // namespace splitsolve
