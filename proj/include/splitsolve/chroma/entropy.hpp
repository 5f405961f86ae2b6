#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "splitsolve/chroma/solver.hpp"
#include "splitsolve/core/system.hpp"
#include "splitsolve/core/test_function.hpp"
#include "splitsolve/scalar/entropy.hpp"

namespace splitsolve {

using StateMap = std::function<double(const std::vector<double>&)>;

struct LiftProvenance {
    ScalarEntropyPair scalar;
    double C = 0.0;
};

struct SystemEntropyPair {
    std::string name;
    StateMap eta;
    StateMap q;
    std::optional<LiftProvenance> provenance;
    bool convex = false;
};

namespace detail {

inline double central_difference(const std::function<double(double)>& f, double x) {
    const double h = 1e-5 * std::max(1.0, std::abs(x));
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace detail

/// eta = eta~(u1 + u2) + C (u1 - u2),  q = q~(u1 + u2) + C (u1 - u2) / (1 + u1 + u2).
inline SystemEntropyPair lift_entropy(const ScalarEntropyPair& scalar, double C) {
    const auto f = chromatography_flux();
    // Spot check q~' = eta~' g' on the admissible range; two nearby points so
    // that a kink (Kruzkov pairs) cannot fail the check on its own.
    auto matches = [&](double v) {
        const double lhs = detail::central_difference(scalar.q, v);
        const double rhs = detail::central_difference(scalar.eta, v) * f.dg(v);
        return std::abs(lhs - rhs) <= 1e-6 * (1.0 + std::abs(rhs));
    };
    for (double v : {0.0, 0.1, 0.5, 1.0, 2.0, 4.0}) {
        if (!matches(v + 1e-3) && !matches(v + 2.7e-3))
            fail(ErrorKind::invalid_entropy, "'" + scalar.name + "' is not an entropy pair for v/(1+v) (v = " +
                                                 std::to_string(v) + ")");
    }
    bool convex = true;
    for (double v : {0.05, 0.3, 0.7, 1.5, 3.0}) {
        const double h = 1e-3;
        convex = convex && scalar.eta(v + h) - 2.0 * scalar.eta(v) + scalar.eta(v - h) >= -1e-12;
    }
    SystemEntropyPair p;
    p.name = "lift(" + scalar.name + ", C=" + std::to_string(C) + ")";
    p.eta = [e = scalar.eta, C](const std::vector<double>& u) { return e(u[0] + u[1]) + C * (u[0] - u[1]); };
    p.q = [q = scalar.q, C](const std::vector<double>& u) {
        return q(u[0] + u[1]) + C * (u[0] - u[1]) / (1.0 + u[0] + u[1]);
    };
    p.provenance = LiftProvenance{scalar, C};
    p.convex = convex;
    return p;
}

/// max over states of |grad eta . DF - grad q| by central differences.
inline double entropy_compat_defect(const SystemEntropyPair& pair, const std::vector<std::vector<double>>& states) {
    double worst = 0.0;
    for (const auto& u : states) {
        const std::size_t k = u.size();
        double s = 1.0;
        for (double x : u) s += x;
        std::vector<double> grad_eta(k), grad_q(k);
        for (std::size_t j = 0; j < k; ++j) {
            const double h = 1e-5 * std::max(1.0, std::abs(u[j]));
            auto up = u, dn = u;
            up[j] += h;
            dn[j] -= h;
            grad_eta[j] = (pair.eta(up) - pair.eta(dn)) / (2.0 * h);
            grad_q[j] = (pair.q(up) - pair.q(dn)) / (2.0 * h);
        }
        for (std::size_t j = 0; j < k; ++j) {
            // dF_i/du_j = delta_ij / s - u_i / s^2
            double lhs = 0.0;
            for (std::size_t i = 0; i < k; ++i) lhs += grad_eta[i] * ((i == j ? 1.0 / s : 0.0) - u[i] / (s * s));
            worst = std::max(worst, std::abs(lhs - grad_q[j]));
        }
    }
    return worst;
}

struct LiftProjection {
    double C = 0.0;
    std::vector<double> v;          // sampled levels of u1 + u2
    std::vector<double> eta_tilde;  // fitted eta~(v_j)
    double rms_residual = 0.0;
};

/// Least-squares fit of eta(u) ~ a_j + C (u1 - u2) over states on the lines u1 + u2 = v_j.
/// C is shared by all lines; a_j = eta~(v_j).
inline LiftProjection project_onto_lifted(const StateMap& eta, const std::vector<double>& levels,
                                          std::size_t per_level = 9) {
    if (levels.empty() || per_level < 2) fail(ErrorKind::invalid_argument, "projection needs samples");
    std::vector<std::vector<double>> ws(levels.size()), es(levels.size());
    for (std::size_t j = 0; j < levels.size(); ++j) {
        const double v = levels[j];
        if (!(v > 0.0)) fail(ErrorKind::invalid_argument, "levels must be positive");
        for (std::size_t m = 0; m < per_level; ++m) {
            const double w = v * (-1.0 + 2.0 * static_cast<double>(m) / static_cast<double>(per_level - 1));
            ws[j].push_back(w);
            es[j].push_back(eta({0.5 * (v + w), 0.5 * (v - w)}));
        }
    }
    double num = 0.0, den = 0.0;
    std::vector<double> wbar(levels.size()), ebar(levels.size());
    for (std::size_t j = 0; j < levels.size(); ++j) {
        for (std::size_t m = 0; m < per_level; ++m) {
            wbar[j] += ws[j][m];
            ebar[j] += es[j][m];
        }
        wbar[j] /= static_cast<double>(per_level);
        ebar[j] /= static_cast<double>(per_level);
        for (std::size_t m = 0; m < per_level; ++m) {
            num += (ws[j][m] - wbar[j]) * (es[j][m] - ebar[j]);
            den += (ws[j][m] - wbar[j]) * (ws[j][m] - wbar[j]);
        }
    }
    LiftProjection out;
    out.C = num / den;
    out.v = levels;
    double ss = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < levels.size(); ++j) {
        out.eta_tilde.push_back(ebar[j] - out.C * wbar[j]);
        for (std::size_t m = 0; m < per_level; ++m) {
            const double r = es[j][m] - out.eta_tilde[j] - out.C * ws[j][m];
            ss += r * r;
            ++count;
        }
    }
    out.rms_residual = std::sqrt(ss / static_cast<double>(count));
    return out;
}

/// max over pairs and tests of the positive part of -int int eta(U) phi_t + q(U) phi_x.
inline double admissibility_residual(const SystemTrajectory& traj, const std::vector<SystemEntropyPair>& pairs,
                                     const std::vector<TestFunction>& tests) {
    for (const auto& p : pairs)
        if (!p.convex) fail(ErrorKind::invalid_entropy, "admissibility needs convex entropies ('" + p.name + "')");
    for (const auto& tf : tests)
        if (tf.t_lo <= 0.0) fail(ErrorKind::invalid_argument, "test function support must avoid t = 0");
    const Grid1D& g = traj.front().grid();
    double worst = 0.0;
    std::vector<std::vector<double>> eta(traj.size()), q(traj.size());
    for (const auto& p : pairs) {
        for (std::size_t k = 0; k < traj.size(); ++k) {
            eta[k].resize(g.n);
            q[k].resize(g.n);
            for (std::size_t i = 0; i < g.n; ++i) {
                const auto u = traj.states[k].at(i);
                eta[k][i] = p.eta(u);
                q[k][i] = p.q(u);
            }
        }
        for (const auto& tf : tests) {
            const double w = weak_integral(
                g, traj.times, tf, [&](std::size_t k, std::size_t i) { return eta[k][i]; },
                [&](std::size_t k, std::size_t i) { return q[k][i]; });
            worst = std::max(worst, -w);
        }
    }
    return worst;
}

/// Lifted Kruzkov pairs |v - k| + C (u1 - u2) for each level k and each C.
inline std::vector<SystemEntropyPair> lifted_kruzkov_family(const std::vector<double>& levels,
                                                            const std::vector<double>& Cs) {
    const auto f = chromatography_flux();
    std::vector<SystemEntropyPair> out;
    for (double k : levels)
        for (double C : Cs) {
            SystemEntropyPair p = lift_entropy(kruzkov_pair(f, k), C);
            out.push_back(std::move(p));
        }
    return out;
}

}  // namespace splitsolve
