#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "splitsolve/depauw/schedule.hpp"
#include "splitsolve/depauw/stage.hpp"

namespace splitsolve {

/// Schedule plus the stage maps it uses, in the schedule's time order.
struct DepauwFlow {
    DyadicSchedule schedule;
    Grid2D grid;
    std::vector<StageMap> maps;

    const StageMap* map_at(double t) const {
        const StageWindow* st = schedule.stage_at(t);
        return st ? &maps[static_cast<std::size_t>(st - schedule.stages.data())] : nullptr;
    }
};

inline DepauwFlow make_depauw_flow(const DyadicSchedule& schedule, const Grid2D& grid) {
    DepauwFlow f{schedule, grid, {}};
    for (const auto& st : schedule.stages) f.maps.push_back(build_stage(st.level, grid));
    return f;
}

struct Trajectory2D {
    std::vector<double> times;
    std::vector<CellField2D> states;
    std::vector<char> exact;  // 0 where the state was sampled mid-stage
    std::map<std::string, std::string> meta;

    std::size_t size() const { return times.size(); }
};

namespace detail {
inline CellField2D sample_rotated(const StageMap& st, const CellField2D& start, double theta) {
    const Grid2D& g = start.grid;
    CellField2D out(g, 0.0);
    for (std::size_t j = 0; j < g.n; ++j)
        for (std::size_t i = 0; i < g.n; ++i) {
            const auto [x, y] = st.preimage(g.center(i), g.center(j), theta);
            const auto ci = g.wrap(static_cast<long long>(std::floor(x / g.dx)));
            const auto cj = g.wrap(static_cast<long long>(std::floor(y / g.dx)));
            out.at(i, j) = start.at(ci, cj);
        }
    return out;
}
}  // namespace detail

/// Transport of `init` (the state when the finest stage begins) to each query time.
/// Stage boundaries are exact permutation images; interior times sample the
/// rotated start-of-stage state at cell centres.
inline Trajectory2D evolve(const DepauwFlow& flow, const CellField2D& init, const std::vector<double>& times) {
    if (!(init.grid == flow.grid)) fail(ErrorKind::invalid_argument, "initial field is not on the flow grid");
    const DyadicSchedule& sch = flow.schedule;
    for (double t : times)
        if (!std::isfinite(t) || t < 0.0 || t > sch.t_end())
            fail(ErrorKind::invalid_argument, "query time outside [0, " + std::to_string(sch.t_end()) + "]");

    std::vector<CellField2D> boundary{init};
    auto boundary_state = [&](std::size_t s) -> const CellField2D& {
        while (boundary.size() <= s) boundary.push_back(flow.maps[boundary.size() - 1].apply(boundary.back()));
        return boundary[s];
    };

    Trajectory2D out;
    out.meta["variant"] = to_string(sch.variant);
    out.meta["k_max"] = std::to_string(sch.k_max);
    out.meta["m"] = std::to_string(flow.grid.m);
    out.meta["intra_stage"] = "rotated-sample, approximate";
    for (double t : times) {
        out.times.push_back(t);
        const StageWindow* st = t < sch.t_begin() ? nullptr : sch.stage_at(t);
        if (!st) {
            out.states.push_back(init);
            out.exact.push_back(1);
            continue;
        }
        const auto s = static_cast<std::size_t>(st - sch.stages.data());
        const double theta = sch.progress(*st, t);
        if (theta <= 0.0) {
            out.states.push_back(boundary_state(s));
            out.exact.push_back(1);
        } else if (theta >= 1.0) {
            out.states.push_back(boundary_state(s + 1));
            out.exact.push_back(1);
        } else {
            out.states.push_back(detail::sample_rotated(flow.maps[s], boundary_state(s), theta));
            out.exact.push_back(0);
        }
    }
    return out;
}

/// Nontrivial solution from zero data: the datum 0 at t = 0, and for t > 0 the
/// finest resolved oscillation chessboard(k_max) carried forward by the flow.
inline Trajectory2D nontrivial_branch(const DepauwFlow& flow, const std::vector<double>& times) {
    Trajectory2D tr = evolve(flow, chessboard(flow.schedule.k_max, flow.grid), times);
    for (std::size_t i = 0; i < tr.size(); ++i)
        if (tr.times[i] == 0.0) tr.states[i] = CellField2D(flow.grid, 0.0);
    tr.meta["branch"] = "nontrivial";
    return tr;
}

inline Trajectory2D zero_branch(const DepauwFlow& flow, const std::vector<double>& times) {
    Trajectory2D tr = evolve(flow, CellField2D(flow.grid, 0.0), times);
    tr.meta["branch"] = "zero";
    return tr;
}

}  // namespace splitsolve
