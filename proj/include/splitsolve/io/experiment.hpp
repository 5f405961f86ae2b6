#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "splitsolve/chroma/entropy.hpp"
#include "splitsolve/chroma/solver.hpp"
#include "splitsolve/depauw/diagnostics.hpp"
#include "splitsolve/io/config.hpp"
#include "splitsolve/io/export.hpp"
#include "splitsolve/kk/kk.hpp"
#include "splitsolve/scalar/entropy.hpp"
#include "splitsolve/scalar/estimates.hpp"
#include "splitsolve/transport/characteristics.hpp"
#include "splitsolve/verify/acceptance.hpp"

namespace splitsolve {

using nlohmann::ordered_json;

/// What one experiment produces: the trajectory (absent for `verify`) and its diagnostics.
struct RunOutcome {
    std::optional<ExportData> data;
    ordered_json diagnostics;
    bool ok = true;  // false only when a verify run has failing criteria
};

namespace detail {

inline CellField initial_component(const ExperimentConfig& c, const Grid1D& g, std::size_t j) {
    const InitialSpec& ic = c.initial;
    if (ic.type == "constant") return CellField::constant(g, ic.value[j]);
    if (ic.type == "riemann") {
        const double l = ic.left[j], r = ic.right[j], x0 = ic.x0;
        return project([=](double x) { return x < x0 ? l : r; }, g);
    }
    const auto& xs = ic.x;
    const auto& us = ic.columns[j];
    return project(
        [&](double x) {
            if (x <= xs.front()) return us.front();
            if (x >= xs.back()) return us.back();
            const std::size_t i = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
            const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
            return (1.0 - w) * us[i - 1] + w * us[i];
        },
        g);
}

inline SystemState initial_state(const ExperimentConfig& c, const Grid1D& g) {
    std::vector<CellField> comps;
    for (std::size_t j = 0; j < c.initial.components(); ++j) comps.push_back(initial_component(c, g, j));
    return SystemState(std::move(comps));
}

/// Solver record times: the requested ones plus a uniform 100-interval grid, so
/// that space-time diagnostics do not depend on how sparsely output is recorded.
inline std::vector<double> solver_records(const ExperimentConfig& c) {
    auto ts = c.recorded_times();
    for (double t : uniform_times(c.t_end, 100)) ts.push_back(t);
    std::sort(ts.begin(), ts.end());
    std::vector<double> out;
    for (double t : ts)
        if (t > 0.0 && (out.empty() || t - out.back() > 1e-12 * (1.0 + t))) out.push_back(t);
    return out;
}

/// Indices of the requested output times within a denser trajectory.
template <class Traj>
std::vector<std::size_t> output_indices(const ExperimentConfig& c, const Traj& tr) {
    std::vector<std::size_t> idx;
    for (double t : c.recorded_times()) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < tr.times.size(); ++k)
            if (std::abs(tr.times[k] - t) < std::abs(tr.times[best] - t)) best = k;
        idx.push_back(best);
    }
    return idx;
}

inline Trajectory output_subset(const ExperimentConfig& c, const Trajectory& tr) {
    Trajectory out;
    for (std::size_t k : output_indices(c, tr)) out.push(tr.times[k], tr.fields[k]);
    out.meta = tr.meta;
    return out;
}

inline SystemTrajectory output_subset(const ExperimentConfig& c, const SystemTrajectory& tr) {
    SystemTrajectory out;
    for (std::size_t k : output_indices(c, tr)) out.push(tr.times[k], tr.states[k]);
    out.meta = tr.meta;
    return out;
}

/// Mass balance with the boundary fluxes frozen at the initial edge states:
/// max_t | m(t) - m(0) + t (G(right) - G(left)) |. Exact while no wave reaches an edge.
template <class Density, class Flux>
double frozen_mass_defect(const std::vector<double>& times, Density&& density, Flux&& boundary_flux_jump) {
    double worst = 0.0;
    const double m0 = density(0);
    for (std::size_t k = 0; k < times.size(); ++k)
        worst = std::max(worst, std::abs(density(k) - m0 + times[k] * boundary_flux_jump));
    return worst;
}

inline std::vector<TestFunction> interior_tests(const ExperimentConfig& c) {
    const double L = c.x_max - c.x_min;
    return bump_family(0.05 * c.t_end, c.t_end, c.x_min + 0.1 * L, c.x_max - 0.1 * L, 3, 6);
}

inline std::vector<double> spread(double lo, double hi, int count) {
    std::vector<double> out;
    for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * (i + 0.5) / count);
    return out;
}

inline RunOutcome run_riemann(const ExperimentConfig& c) {
    const Grid1D g = make_grid(c.x_min, c.x_max, c.n);
    const FluxFunction f = c.flux == "burgers" ? burgers_flux() : chromatography_flux();
    const CellField v0 = initial_component(c, g, 0);
    ScalarConfig sc;
    sc.cfl = c.cfl;
    sc.t_end = c.t_end;
    sc.record_times = solver_records(c);
    const Trajectory tr = solve_scalar(f, v0, sc);

    ordered_json d;
    if (c.initial.type == "riemann") {
        const double l = c.initial.left[0], r = c.initial.right[0], x0 = c.initial.x0;
        const auto fan = riemann_fan(f, l, r);
        const CellField exact = project([&](double x) { return riemann_eval(f, fan, (x - x0) / c.t_end); }, g);
        d["l1_error"] = lp_distance(tr.back(), exact, Norm::l1);
    } else {
        d["l1_error"] = nullptr;
    }
    d["mass_defect"] = frozen_mass_defect(
        tr.times, [&](std::size_t k) { return mass(tr.fields[k]); }, f.g(v0.values.back()) - f.g(v0.values.front()));
    const Trajectory shown = output_subset(c, tr);
    ordered_json tv = ordered_json::array();
    for (const auto& fld : shown.fields) tv.push_back(total_variation(fld));
    d["tv"] = tv;
    double er = 0.0;
    const auto tests = interior_tests(c);
    for (double k : spread(v0.min(), v0.max(), 5)) er = std::max(er, entropy_residual(tr, kruzkov_pair(f, k), tests));
    d["entropy_residual"] = er;
    // One-sided slope bound; the constant is the flux's uniform convexity on the data range.
    const double cc = f.convexity == Convexity::concave ? chromatography_concavity(v0.max()) : f.c;
    double ol = 0.0;
    for (std::size_t k = 1; k < tr.size(); ++k)
        ol = std::max(ol, oleinik_excess(tr.fields[k], tr.times[k], cc, f.convexity));
    d["oleinik_excess"] = ol;
    d["oleinik_c"] = cc;
    return {to_export(shown, g), d, true};
}

inline RunOutcome run_chroma(const ExperimentConfig& c) {
    const Grid1D g = make_grid(c.x_min, c.x_max, c.n);
    const ChromState U0 = initial_state(c, g);
    if (U0.min_component() < 0.0) fail(ErrorKind::invalid_argument, "chromatography data must be nonnegative");
    ChromaConfig cc;
    cc.cfl = c.cfl;
    cc.t_end = c.t_end;
    cc.record_times = solver_records(c);
    const ChromTrajectory tr = solve_chromatography(U0, cc);
    const std::size_t k = U0.k();

    ordered_json d;
    ordered_json md = ordered_json::array();
    const auto left = U0.at(0), right = U0.at(g.n - 1);
    const auto FL = chromatography_system_flux(left), FR = chromatography_system_flux(right);
    for (std::size_t j = 0; j < k; ++j)
        md.push_back(frozen_mass_defect(
            tr.times, [&](std::size_t r) { return mass(tr.states[r][j]); }, FR[j] - FL[j]));
    d["mass_defect"] = md;
    const SystemTrajectory shown = output_subset(c, tr);
    ordered_json tv = ordered_json::array();
    for (std::size_t k : output_indices(c, tr)) tv.push_back(total_variation(tr.v.fields[k]));
    d["tv"] = tv;

    if (k == 2) {
        const CellField& v0 = tr.v.front();
        const auto pairs = lifted_kruzkov_family(spread(v0.min(), v0.max(), 5), {-1.0, 0.0, 1.0});
        d["entropy_residual"] = admissibility_residual(tr, pairs, interior_tests(c));
    } else {
        d["entropy_residual"] = nullptr;  // lifted pairs are defined for two components
    }

    ordered_json dom;
    bool f_pass = true;
    double min_comp = std::numeric_limits<double>::infinity();
    for (const auto& s : tr.states) {
        const DomainReport rep = check_domain(s, DomainClass::F, Window::all());
        f_pass = f_pass && rep.pass;
        min_comp = std::min(min_comp, rep.min_component);
    }
    dom["F"] = {{"pass", f_pass}, {"min_component", min_comp}};
    const double delta = tr.v.front().min();
    if (delta > 0.0) {
        bool g_pass = true;
        double min_v = std::numeric_limits<double>::infinity();
        for (const auto& s : tr.states) {
            const DomainReport rep = check_domain(s, DomainClass::G, Window::all(), delta * (1.0 - 1e-12));
            g_pass = g_pass && rep.pass;
            min_v = std::min(min_v, rep.min_v);
        }
        dom["G"] = {{"applicable", true}, {"pass", g_pass}, {"delta", delta}, {"min_v", min_v}};
    } else {
        dom["G"] = {{"applicable", false}};
    }
    d["domain_checks"] = dom;
    d["regime"] = tr.meta.at("regime");

    if (c.epsilon > 0.0) {
        const TransportPair pair = make_transport_pair(tr.v, chromatography_velocity);
        ordered_json gaps = ordered_json::array();
        for (std::size_t j = 0; j < tr.w.size(); ++j) {
            const Trajectory ch =
                solve_by_characteristics(pair, tr.w[j].front(), MollifierSpec{c.epsilon}, {c.t_end});
            gaps.push_back(lp_distance(ch.back(), tr.w[j].back(), Norm::l1));
        }
        d["cross_solver_gap"] = gaps;
    }
    return {to_export(shown, g, k), d, true};
}

inline RunOutcome run_kk(const ExperimentConfig& c) {
    const Grid1D g = make_grid(c.x_min, c.x_max, c.n);
    const KKState U0 = initial_state(c, g);
    std::function<double(double)> f, df;
    if (c.kk_f == "identity") {
        f = [](double r) { return r; };
        df = [](double) { return 1.0; };
    } else {
        f = [a = c.kk_a, b = c.kk_b](double r) { return a + b * r; };
        df = [b = c.kk_b](double) { return b; };
    }
    KKConfig kc;
    kc.cfl = c.cfl;
    kc.t_end = c.t_end;
    kc.record_times = solver_records(c);
    const KKTrajectory tr = solve_kk(U0, f, df, kc);
    const RenormalizationDefect rd = renormalization_defect(tr);
    ordered_json d;
    d["c"] = tr.flux.c;
    d["excess"] = rd.pointwise_excess;
    d["l1_gap"] = rd.l1_gap;
    ordered_json tv = ordered_json::array();
    for (std::size_t k : output_indices(c, tr)) tv.push_back(total_variation(tr.rho.fields[k]));
    d["tv_rho"] = tv;
    return {to_export(output_subset(c, tr), g, U0.k()), d, true};
}

inline std::vector<double> depauw_times(const DyadicSchedule& s, std::size_t per_stage) {
    std::vector<double> ts{0.0};
    for (const auto& st : s.stages) {
        if (st.start > ts.back()) ts.push_back(st.start);
        for (std::size_t q = 1; q < per_stage; ++q)
            ts.push_back(st.start + st.length() * static_cast<double>(q) / static_cast<double>(per_stage));
    }
    ts.push_back(s.t_end());
    return ts;
}

inline RunOutcome run_depauw(const ExperimentConfig& c) {
    const Grid2D g = make_grid2d(c.m);
    const auto variant = c.variant == "strong" ? DepauwVariant::strong : DepauwVariant::original;
    const DepauwFlow flow = make_depauw_flow(make_schedule(variant, c.k_max), g);
    const auto times = depauw_times(flow.schedule, c.samples_per_stage);
    const Trajectory2D tr = c.branch == "zero" ? zero_branch(flow, times) : nontrivial_branch(flow, times);

    ordered_json d;
    ordered_json stages = ordered_json::array();
    for (std::size_t s = 0; s < flow.maps.size(); ++s) {
        const StageWindow& w = flow.schedule.stages[s];
        const StageMap& sm = flow.maps[s];
        stages.push_back({{"level", w.level},
                          {"index", w.index},
                          {"start", w.start},
                          {"end", w.end},
                          {"amplitude", w.amplitude},
                          {"sup_norm", sm.sup_norm},
                          {"bv_norm", sm.bv_norm},
                          {"max_divergence", sm.max_divergence}});
    }
    d["stages"] = stages;
    const auto modes = low_fourier_modes();
    ordered_json mix = ordered_json::array();
    for (const auto& r : mixing_report(tr, modes))
        mix.push_back({{"t", r.t}, {"l1", r.l1}, {"max_pairing", r.max_pairing}, {"coarse_l1", r.coarse_l1}});
    d["mixing"] = mix;
    ordered_json field = ordered_json::array();
    for (const auto& r : field_diagnostics(flow, times))
        field.push_back({{"t", r.t},
                         {"level", r.level},
                         {"index", r.index},
                         {"sup_norm", r.sup_norm},
                         {"bv_norm", r.bv_norm},
                         {"modulus_next", r.modulus_next}});
    d["field"] = field;
    if (c.witness) {
        const NonuniquenessWitness w = nonuniqueness_witness(flow, modes, times);
        d["witness"] = {{"zero_residual", w.zero_residual},
                        {"branch_residual", w.branch_residual},
                        {"min_l1_gap", w.min_l1_gap}};
    } else {
        d["witness"] = nullptr;
    }
    ordered_json exact = ordered_json::array();
    for (char e : tr.exact) exact.push_back(e != 0);
    d["exact_states"] = exact;
    return {to_export(tr, g), d, true};
}

inline RunOutcome run_verify(const ExperimentConfig& c, std::ostream& log) {
    const auto level = c.level == "full" ? acceptance::Level::full : acceptance::Level::fast;
    const auto results = acceptance::run(level, log);
    ordered_json d;
    d["level"] = c.level;
    ordered_json rows = ordered_json::array();
    // Wall times are left out so that reports stay byte-stable.
    for (const auto& r : results)
        rows.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
    d["criteria"] = rows;
    const bool ok = acceptance::all_passed(results);
    d["all_passed"] = ok;
    return {std::nullopt, d, ok};
}

}  // namespace detail

/// Runs the experiment in memory. Progress from `verify` goes to `log`.
inline RunOutcome run_experiment(const ExperimentConfig& c, std::ostream& log) {
    validate(c);
    RunOutcome out;
    switch (c.kind) {
        case ExperimentKind::riemann: out = detail::run_riemann(c); break;
        case ExperimentKind::chroma: out = detail::run_chroma(c); break;
        case ExperimentKind::kk: out = detail::run_kk(c); break;
        case ExperimentKind::depauw: out = detail::run_depauw(c); break;
        case ExperimentKind::verify: out = detail::run_verify(c, log); break;
    }
    ordered_json d;
    d["kind"] = to_string(c.kind);
    d["name"] = c.name;
    if (out.data) {
        d["grid"] = out.data->grid;
        d["times"] = out.data->times;
        out.data->meta["experiment"] = c.name;
    }
    d["diagnostics"] = std::move(out.diagnostics);
    out.diagnostics = std::move(d);
    return out;
}

/// Output root: $SPLITSOLVE_OUTPUT_ROOT when set, else the working directory.
inline std::filesystem::path output_root() {
    const char* env = std::getenv("SPLITSOLVE_OUTPUT_ROOT");
    return env && *env ? std::filesystem::path(env) : std::filesystem::current_path();
}

inline std::filesystem::path resolve_output(const std::filesystem::path& p, const std::filesystem::path& root) {
    return p.is_absolute() ? p : root / p;
}

struct WrittenArtifacts {
    std::vector<std::filesystem::path> paths;
    bool ok = true;
};

/// Runs and writes CSV, diagnostics JSON and (if requested) the trajectory JSON under `root`.
inline WrittenArtifacts run_and_write(const ExperimentConfig& c, const std::filesystem::path& root, std::ostream& log) {
    const RunOutcome out = run_experiment(c, log);
    WrittenArtifacts w;
    w.ok = out.ok;
    if (out.data) {
        const auto csv = resolve_output(c.csv.empty() ? c.name + ".csv" : c.csv, root);
        write_csv(*out.data, csv);
        w.paths.push_back(csv);
        if (!c.trajectory_json.empty()) {
            const auto tj = resolve_output(c.trajectory_json, root);
            write_json(to_json(*out.data), tj);
            w.paths.push_back(tj);
        }
    }
    const auto js = resolve_output(c.json.empty() ? c.name + ".json" : c.json, root);
    write_json(out.diagnostics, js);
    w.paths.push_back(js);
    return w;
}

}  // namespace splitsolve
