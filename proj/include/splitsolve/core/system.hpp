#pragma once

#include <map>
#include <string>
#include <vector>

#include "splitsolve/core/field.hpp"
#include "splitsolve/core/measures.hpp"
#include "splitsolve/core/trajectory.hpp"

namespace splitsolve {

/// k cell fields on one grid (the components of a system state).
struct SystemState {
    std::vector<CellField> components;

    SystemState() = default;
    explicit SystemState(std::vector<CellField> c) : components(std::move(c)) { validate(); }

    std::size_t k() const { return components.size(); }
    const Grid1D& grid() const { return components.front().grid; }
    const CellField& operator[](std::size_t i) const { return components[i]; }
    CellField& operator[](std::size_t i) { return components[i]; }

    void validate() const {
        if (components.empty()) fail(ErrorKind::invalid_argument, "state has no components");
        for (const auto& c : components) {
            if (!same_grid(c, components.front()))
                fail(ErrorKind::invalid_argument, "state components must share one grid");
            if (!c.all_finite()) fail(ErrorKind::invalid_argument, "state components must be finite");
        }
    }

    double min_component() const {
        double m = components.front().min();
        for (const auto& c : components) m = std::min(m, c.min());
        return m;
    }

    /// State vector at cell i.
    std::vector<double> at(std::size_t i) const {
        std::vector<double> u(components.size());
        for (std::size_t j = 0; j < u.size(); ++j) u[j] = components[j][i];
        return u;
    }
};

/// Max over components of the L1 distance.
inline double state_distance(const SystemState& a, const SystemState& b, const Window& window = Window::all()) {
    if (a.k() != b.k()) fail(ErrorKind::invalid_argument, "states have different component counts");
    double d = 0.0;
    for (std::size_t j = 0; j < a.k(); ++j) d = std::max(d, lp_distance(a[j], b[j], Norm::l1, window));
    return d;
}

struct SystemTrajectory {
    std::vector<double> times;
    std::vector<SystemState> states;
    std::map<std::string, std::string> meta;

    std::size_t size() const { return times.size(); }
    const SystemState& back() const { return states.back(); }
    const SystemState& front() const { return states.front(); }

    void push(double t, SystemState s) {
        if (!times.empty() && !(t > times.back()))
            fail(ErrorKind::invalid_argument, "trajectory times must increase");
        times.push_back(t);
        states.push_back(std::move(s));
    }

    /// One component as a scalar trajectory.
    Trajectory component(std::size_t j) const {
        Trajectory out;
        for (std::size_t k = 0; k < size(); ++k) out.push(times[k], states[k][j]);
        return out;
    }
};

}  // namespace splitsolve
