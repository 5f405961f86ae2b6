#pragma once

#include <limits>
#include <string>
#include <vector>

#include "splitsolve/core/measures.hpp"
#include "splitsolve/core/system.hpp"

namespace splitsolve {

/// Chromatography state U = (u_1, ..., u_k), k >= 2.
using ChromState = SystemState;

/// How the k - 1 transported variables are written.
///   components: w_i = u_{i+1}
///   difference: w = u_1 - u_2 (2x2 only)
enum class Presentation { components, difference };

struct VW {
    CellField v;
    std::vector<CellField> w;
};

inline VW to_vw(const ChromState& U, Presentation p = Presentation::components) {
    U.validate();
    if (U.k() < 2) fail(ErrorKind::invalid_argument, "chromatography needs at least two components");
    VW out;
    out.v = U[0];
    for (std::size_t j = 1; j < U.k(); ++j)
        for (std::size_t i = 0; i < out.v.size(); ++i) out.v.values[i] += U[j][i];
    if (p == Presentation::difference) {
        if (U.k() != 2) fail(ErrorKind::invalid_argument, "the difference presentation is 2x2 only");
        out.w.push_back(zip_fields(U[0], U[1], [](double a, double b) { return a - b; }));
    } else {
        for (std::size_t j = 1; j < U.k(); ++j) out.w.push_back(U[j]);
    }
    return out;
}

inline ChromState from_vw(const VW& vw, Presentation p = Presentation::components) {
    if (vw.w.empty()) fail(ErrorKind::invalid_argument, "at least one transported variable is required");
    std::vector<CellField> comps;
    if (p == Presentation::difference) {
        if (vw.w.size() != 1) fail(ErrorKind::invalid_argument, "the difference presentation is 2x2 only");
        comps.push_back(zip_fields(vw.v, vw.w[0], [](double v, double w) { return 0.5 * (v + w); }));
        comps.push_back(zip_fields(vw.v, vw.w[0], [](double v, double w) { return 0.5 * (v - w); }));
        return ChromState(std::move(comps));
    }
    CellField u1 = vw.v;
    for (const auto& w : vw.w)
        for (std::size_t i = 0; i < u1.size(); ++i) u1.values[i] -= w[i];
    comps.push_back(std::move(u1));
    for (const auto& w : vw.w) comps.push_back(w);
    return ChromState(std::move(comps));
}

enum class DomainClass { F, G };

struct DomainReport {
    bool pass = false;
    double min_component = 0.0;
    double min_v = 0.0;  // on the window
    double tv_v = 0.0;   // on the window
    std::string reason;
};

/// F: components >= 0 and TV(v) finite on the window; G: components >= 0 and v >= delta there.
inline DomainReport check_domain(const ChromState& U, DomainClass which, const Window& window, double delta = 0.0) {
    const VW vw = to_vw(U);
    const CellRange r = cells_in(U.grid(), window);
    DomainReport rep;
    rep.min_component = std::numeric_limits<double>::infinity();
    rep.min_v = std::numeric_limits<double>::infinity();
    for (const auto& c : U.components)
        for (std::size_t i = r.first; i < r.last; ++i) rep.min_component = std::min(rep.min_component, c[i]);
    for (std::size_t i = r.first; i < r.last; ++i) rep.min_v = std::min(rep.min_v, vw.v[i]);
    rep.tv_v = r.empty() ? 0.0 : total_variation(vw.v, window);
    rep.pass = true;
    if (rep.min_component < 0.0) {
        rep.pass = false;
        rep.reason = "negative component";
    } else if (which == DomainClass::F && !std::isfinite(rep.tv_v)) {
        rep.pass = false;
        rep.reason = "total variation is not finite";
    } else if (which == DomainClass::G && !(rep.min_v >= delta && rep.min_v > 0.0)) {
        rep.pass = false;
        rep.reason = "v drops below delta";
    }
    return rep;
}

/// delta_{R + L t}: min of v0 on [-(R + L t), R + L t].
inline double g_floor(const CellField& v0, double R, double L, double t) {
    const double r = R + L * t;
    const CellRange cr = cells_in(v0.grid, Window{-r, r});
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = cr.first; i < cr.last; ++i) m = std::min(m, v0[i]);
    // Cells beyond the grid carry the edge values under constant extension.
    if (-r < v0.grid.x_min) m = std::min(m, v0.values.front());
    if (r > v0.grid.x_max) m = std::min(m, v0.values.back());
    return m;
}

}  // namespace splitsolve
