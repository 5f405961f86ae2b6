#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "splitsolve/depauw/evolve.hpp"

namespace splitsolve {

/// Smooth periodic test function with its gradient.
struct Mode2D {
    std::string name;
    std::function<double(double, double)> f, fx, fy;
};

/// Products of {1, cos, sin}(2 pi x) and {1, cos, sin}(2 pi y): nine modes.
inline std::vector<Mode2D> low_fourier_modes() {
    using Fn = std::function<double(double)>;
    const double w = 2.0 * std::numbers::pi;
    struct Factor {
        std::string name;
        Fn v, d;
    };
    const std::vector<Factor> fs{
        {"1", [](double) { return 1.0; }, [](double) { return 0.0; }},
        {"cos", [w](double z) { return std::cos(w * z); }, [w](double z) { return -w * std::sin(w * z); }},
        {"sin", [w](double z) { return std::sin(w * z); }, [w](double z) { return w * std::cos(w * z); }},
    };
    std::vector<Mode2D> out;
    for (const auto& a : fs)
        for (const auto& b : fs)
            out.push_back({a.name + "(x)" + b.name + "(y)",
                           [a, b](double x, double y) { return a.v(x) * b.v(y); },
                           [a, b](double x, double y) { return a.d(x) * b.v(y); },
                           [a, b](double x, double y) { return a.v(x) * b.d(y); }});
    return out;
}

struct MixingRow {
    double t = 0.0;
    double l1 = 0.0;
    double max_pairing = 0.0;
    std::array<double, 4> coarse_l1{};  // box averages at scales 2^-j, j = 0..3
};

inline std::vector<MixingRow> mixing_report(const Trajectory2D& traj, const std::vector<Mode2D>& modes) {
    std::vector<MixingRow> rows;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const CellField2D& u = traj.states[i];
        MixingRow r;
        r.t = traj.times[i];
        r.l1 = l1_norm2d(u);
        for (const auto& md : modes) r.max_pairing = std::max(r.max_pairing, std::abs(pairing2d(u, md.f)));
        for (int j = 0; j < 4; ++j) r.coarse_l1[static_cast<std::size_t>(j)] = j <= u.grid.m ? coarse_l1(u, j) : 0.0;
        rows.push_back(r);
    }
    return rows;
}

/// Face velocities (x faces then y faces) of the field at time t.
inline std::vector<double> field_faces(const DepauwFlow& flow, double t) {
    const Grid2D& g = flow.grid;
    std::vector<double> out(2 * g.size(), 0.0);
    const StageMap* st = flow.map_at(t);
    if (!st) return out;
    const double a = flow.schedule.field_scale(t) / g.dx;
    for (std::size_t c = 0; c < g.size(); ++c) {
        out[c] = a * st->flux_x[c];
        out[g.size() + c] = a * st->flux_y[c];
    }
    return out;
}

struct FieldRow {
    double t = 0.0;
    int level = 0;  // stage geometry level, 0 outside the schedule
    int index = 0;  // interval index j
    double sup_norm = 0.0;
    double bv_norm = 0.0;
    double modulus_next = 0.0;  // sup over faces |c(t) - c(t_next)|; 0 on the last row
};

inline std::vector<FieldRow> field_diagnostics(const DepauwFlow& flow, const std::vector<double>& times) {
    std::vector<FieldRow> rows;
    std::vector<double> prev;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        FieldRow r;
        r.t = t;
        const StageWindow* st = flow.schedule.stage_at(t);
        if (st) {
            const StageMap& sm = *flow.map_at(t);
            const double a = std::abs(flow.schedule.field_scale(t));
            r.level = st->level;
            r.index = st->index;
            r.sup_norm = a * sm.sup_norm;
            r.bv_norm = a * sm.bv_norm;
        }
        std::vector<double> faces = field_faces(flow, t);
        if (i > 0) {
            double m = 0.0;
            for (std::size_t c = 0; c < faces.size(); ++c) m = std::max(m, std::abs(faces[c] - prev[c]));
            rows.back().modulus_next = m;
        }
        prev = std::move(faces);
        rows.push_back(r);
    }
    return rows;
}

/// Discrete weak form of u_t + div(a u) = 0 against chi(t) F(x), chi = sin^2(pi t / T):
/// the time integral of sum u (chi' F + chi a . grad F) dx^2, composite Simpson per stage.
/// `sample` returns the candidate solution at the requested quadrature times.
using StateSampler = std::function<Trajectory2D(const std::vector<double>&)>;

inline std::vector<double> weak_residual(const DepauwFlow& flow, const StateSampler& sample,
                                         const std::vector<Mode2D>& modes, int per_stage = 32) {
    if (per_stage < 2 || per_stage % 2) fail(ErrorKind::invalid_argument, "per_stage must be even and >= 2");
    const Grid2D& g = flow.grid;
    const DyadicSchedule& sch = flow.schedule;
    const double T = sch.t_end(), pi = std::numbers::pi;

    struct Segment {
        double a, b;
        int stage;  // -1 before the finest stage
    };
    std::vector<Segment> segs;
    if (sch.t_begin() > 0.0) segs.push_back({0.0, sch.t_begin(), -1});
    for (std::size_t s = 0; s < sch.stages.size(); ++s)
        segs.push_back({sch.stages[s].start, sch.stages[s].end, static_cast<int>(s)});

    std::vector<double> times;
    for (const auto& sg : segs)
        for (int q = 0; q <= per_stage; ++q) times.push_back(sg.a + (sg.b - sg.a) * q / per_stage);
    const Trajectory2D tr = sample(times);
    if (tr.size() != times.size()) fail(ErrorKind::invalid_argument, "sampler returned the wrong number of states");
    for (const auto& u : tr.states)
        if (!(u.grid == g)) fail(ErrorKind::invalid_argument, "sampled state is not on the flow grid");

    // Mode values and gradients at cell centres.
    const std::size_t nm = modes.size();
    std::vector<double> F(nm * g.size()), Fx(nm * g.size()), Fy(nm * g.size());
    for (std::size_t k = 0; k < nm; ++k)
        for (std::size_t j = 0; j < g.n; ++j)
            for (std::size_t i = 0; i < g.n; ++i) {
                const std::size_t c = g.index(i, j);
                F[k * g.size() + c] = modes[k].f(g.center(i), g.center(j));
                Fx[k * g.size() + c] = modes[k].fx(g.center(i), g.center(j));
                Fy[k * g.size() + c] = modes[k].fy(g.center(i), g.center(j));
            }

    std::vector<CompensatedSum> acc(nm);
    std::size_t node = 0;
    for (const auto& sg : segs) {
        const double h = (sg.b - sg.a) / per_stage;
        for (int q = 0; q <= per_stage; ++q, ++node) {
            const double t = times[node];
            const double wq = (q == 0 || q == per_stage) ? 1.0 : (q % 2 ? 4.0 : 2.0);
            const double chi = std::pow(std::sin(pi * t / T), 2);
            const double dchi = (pi / T) * std::sin(2.0 * pi * t / T);
            const StageMap* sm = sg.stage >= 0 ? &flow.maps[static_cast<std::size_t>(sg.stage)] : nullptr;
            const double scale =
                sm ? sch.stages[static_cast<std::size_t>(sg.stage)].amplitude *
                         sch.activation(sch.stages[static_cast<std::size_t>(sg.stage)], t)
                   : 0.0;
            const CellField2D& u = tr.states[node];
            for (std::size_t k = 0; k < nm; ++k) {
                CompensatedSum s;
                for (std::size_t j = 0; j < g.n; ++j)
                    for (std::size_t i = 0; i < g.n; ++i) {
                        const std::size_t c = g.index(i, j);
                        if (u.values[c] == 0.0) continue;
                        double adv = 0.0;
                        if (sm && scale != 0.0) {
                            const auto [vx, vy] = sm->cell_velocity(i, j);
                            adv = scale * (vx * Fx[k * g.size() + c] + vy * Fy[k * g.size() + c]);
                        }
                        s.add(u.values[c] * (dchi * F[k * g.size() + c] + chi * adv));
                    }
                acc[k].add(wq * h / 3.0 * s.value() * g.dx * g.dx);
            }
        }
    }
    std::vector<double> out;
    for (const auto& a : acc) out.push_back(a.value());
    return out;
}

inline std::vector<double> weak_residual(const DepauwFlow& flow, const CellField2D& init,
                                         const std::vector<Mode2D>& modes, int per_stage = 32) {
    return weak_residual(
        flow, [&](const std::vector<double>& ts) { return evolve(flow, init, ts); }, modes, per_stage);
}

inline double max_abs(const std::vector<double>& xs) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, std::abs(x));
    return m;
}

/// Two solutions from the same zero datum: both weak residuals and their L1 separation.
struct NonuniquenessWitness {
    double zero_residual = 0.0;
    double branch_residual = 0.0;
    double min_l1_gap = 0.0;  // over the positive sample times
};

inline NonuniquenessWitness nonuniqueness_witness(const DepauwFlow& flow, const std::vector<Mode2D>& modes,
                                                  const std::vector<double>& sample_times, int per_stage = 32) {
    NonuniquenessWitness w;
    w.zero_residual = max_abs(weak_residual(flow, CellField2D(flow.grid, 0.0), modes, per_stage));
    w.branch_residual = max_abs(weak_residual(flow, chessboard(flow.schedule.k_max, flow.grid), modes, per_stage));
    const Trajectory2D a = nontrivial_branch(flow, sample_times), b = zero_branch(flow, sample_times);
    w.min_l1_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.times[i] > 0.0) w.min_l1_gap = std::min(w.min_l1_gap, l1_distance2d(a.states[i], b.states[i]));
    return w;
}

/// Strong continuity at t0 = 0 of the nontrivial solution (L1 distance to the
/// zero datum) against that of the field (sup distance to c(0) = 0).
struct DichotomyReport {
    std::vector<std::pair<double, double>> solution_modulus;
    std::vector<std::pair<double, double>> field_modulus;
};

inline DichotomyReport strong_continuity_dichotomy(const DepauwFlow& flow, const std::vector<double>& times) {
    DichotomyReport r;
    const Trajectory2D u = nontrivial_branch(flow, times);
    const CellField2D zero(flow.grid, 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        r.solution_modulus.emplace_back(times[i], l1_distance2d(u.states[i], zero));
        r.field_modulus.emplace_back(times[i], max_abs(field_faces(flow, times[i])));
    }
    return r;
}

}  // namespace splitsolve
