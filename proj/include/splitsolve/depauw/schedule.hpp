#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "splitsolve/error.hpp"

namespace splitsolve {

enum class DepauwVariant { original, strong };

inline std::string to_string(DepauwVariant v) { return v == DepauwVariant::original ? "original" : "strong"; }

/// Time slot of the stage with geometry level `level`; `index` j = level - 1 numbers the interval.
struct StageWindow {
    int level = 2;
    int index = 1;
    double start = 0.0;
    double end = 0.0;
    double amplitude = 1.0;

    double length() const { return end - start; }
};

// original: I_j = [2^-j, 2^-j+1], amplitude 1.
// strong:   J_j = [T_{j+1}, T_j] with T_j = (j+1) 2^-(j-1), so |J_j| = j 2^-j;
//           amplitude 1/j times psi_j(t) = 1 - cos(2 pi (t - start) / |J_j|).
// Either way the amplitude integrates to 2^-j over the slot, one quarter turn.
struct DyadicSchedule {
    DepauwVariant variant = DepauwVariant::original;
    int k_max = 2;
    std::vector<StageWindow> stages;  // in time order: finest level first

    double t_begin() const { return stages.front().start; }
    double t_end() const { return stages.back().end; }

    /// Stage active at t (right end of the last stage included), or nullptr.
    const StageWindow* stage_at(double t) const {
        for (const auto& st : stages)
            if (t >= st.start && t < st.end) return &st;
        if (t == t_end()) return &stages.back();
        return nullptr;
    }

    double activation(const StageWindow& st, double t) const {
        if (variant == DepauwVariant::original) return 1.0;
        const double tau = (t - st.start) / st.length();
        return 1.0 - std::cos(2.0 * std::numbers::pi * tau);
    }

    /// Factor multiplying the unit stage field at time t (0 outside every stage).
    double field_scale(double t) const {
        const StageWindow* st = stage_at(t);
        return st ? st->amplitude * activation(*st, t) : 0.0;
    }

    /// Elapsed fraction of the quarter turn of stage st at time t, clamped to [0, 1].
    double progress(const StageWindow& st, double t) const {
        if (t <= st.start) return 0.0;
        if (t >= st.end) return 1.0;
        const double tau = (t - st.start) / st.length();
        if (variant == DepauwVariant::original) return tau;
        return tau - std::sin(2.0 * std::numbers::pi * tau) / (2.0 * std::numbers::pi);
    }
};

inline DyadicSchedule make_schedule(DepauwVariant variant, int k_max) {
    if (k_max < 2) fail(ErrorKind::invalid_argument, "schedule needs k_max >= 2");
    if (k_max > 30) fail(ErrorKind::invalid_argument, "schedule k_max too large");
    DyadicSchedule s;
    s.variant = variant;
    s.k_max = k_max;
    for (int k = k_max; k >= 2; --k) {
        const int j = k - 1;
        StageWindow st;
        st.level = k;
        st.index = j;
        if (variant == DepauwVariant::original) {
            st.start = std::ldexp(1.0, -j);
            st.end = std::ldexp(1.0, -j + 1);
            st.amplitude = 1.0;
        } else {
            st.start = (j + 2) * std::ldexp(1.0, -j);
            st.end = (j + 1) * std::ldexp(1.0, -(j - 1));
            st.amplitude = 1.0 / j;
        }
        s.stages.push_back(st);
    }
    for (std::size_t i = 0; i < s.stages.size(); ++i) {
        if (!(s.stages[i].start > 0.0 && s.stages[i].start < s.stages[i].end))
            fail(ErrorKind::construction_bug, "schedule interval is empty or touches 0");
        if (i > 0 && s.stages[i].start != s.stages[i - 1].end)
            fail(ErrorKind::construction_bug, "schedule intervals are not consecutive");
    }
    return s;
}

}  // namespace splitsolve
