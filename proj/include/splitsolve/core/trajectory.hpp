#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "splitsolve/core/field.hpp"

namespace splitsolve {

/// One explicit time step: the state at `t` was advanced by `dt` using the
/// interface fluxes F_{i-1/2}, i = 0..n (n + 1 entries, ghost interfaces
/// included). `record` marks steps whose end state was stored.
struct StepRecord {
    double t = 0.0;
    double dt = 0.0;
    std::vector<double> fluxes;
    bool record = false;
};

/// Time-stamped fields on one grid, plus the step schedule that produced them.
struct Trajectory {
    std::vector<double> times;
    std::vector<CellField> fields;
    std::map<std::string, std::string> meta;
    std::vector<StepRecord> steps;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
    const Grid1D& grid() const { return fields.front().grid; }
    const CellField& front() const { return fields.front(); }
    const CellField& back() const { return fields.back(); }

    void push(double t, CellField f) {
        if (!times.empty()) {
            if (!(t > times.back()))
                fail(ErrorKind::invalid_argument, "trajectory times must increase");
            if (!same_grid(f, fields.front()))
                fail(ErrorKind::invalid_argument, "trajectory fields must share one grid");
        }
        times.push_back(t);
        fields.push_back(std::move(f));
    }

    /// Index of the record time closest to t (exact match expected).
    std::size_t index_of(double t) const {
        for (std::size_t k = 0; k < times.size(); ++k)
            if (std::abs(times[k] - t) <= 1e-12 * (1.0 + std::abs(t))) return k;
        fail(ErrorKind::invalid_argument, "time " + std::to_string(t) + " is not a record time");
    }
};

/// Builds a trajectory by sampling u(t, x) at midpoints for each time.
inline Trajectory sample_trajectory(const Grid1D& grid, const std::vector<double>& times,
                                    const std::function<double(double, double)>& u,
                                    Boundary boundary = Boundary::constant_extension) {
    Trajectory traj;
    for (double t : times)
        traj.push(t, project([&](double x) { return u(t, x); }, grid, boundary));
    return traj;
}

/// Evenly spaced times 0, dt, ..., t_end (t_end included).
inline std::vector<double> uniform_times(double t_end, std::size_t intervals) {
    std::vector<double> ts(intervals + 1);
    for (std::size_t k = 0; k <= intervals; ++k)
        ts[k] = t_end * static_cast<double>(k) / static_cast<double>(intervals);
    ts.back() = t_end;
    return ts;
}

}  // namespace splitsolve
