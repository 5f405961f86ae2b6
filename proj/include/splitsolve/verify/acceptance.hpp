#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "splitsolve/chroma/entropy.hpp"
#include "splitsolve/chroma/solver.hpp"
#include "splitsolve/chroma/state.hpp"
#include "splitsolve/depauw/diagnostics.hpp"
#include "splitsolve/kk/kk.hpp"
#include "splitsolve/scalar/entropy.hpp"
#include "splitsolve/scalar/estimates.hpp"
#include "splitsolve/scalar/riemann.hpp"
#include "splitsolve/scalar/solver.hpp"
#include "splitsolve/transport/characteristics.hpp"
#include "splitsolve/transport/diagnostics.hpp"
#include "splitsolve/transport/upwind.hpp"

namespace splitsolve::acceptance {

// fast shortens the refinement ladders; every tolerance is the same at both levels.
enum class Level { fast, full };

struct Result {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

class Check {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass_ = false;
            if (failures_++ < 3) notes_ << " FAIL[" << what << "]";
        }
    }
    template <class T>
    void note(const std::string& key, T value) {
        notes_ << " " << key << "=" << value;
    }
    bool pass() const { return pass_; }
    std::string text() const { return notes_.str(); }

private:
    bool pass_ = true;
    int failures_ = 0;
    std::ostringstream notes_;
};

inline std::string sci(double v) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << v;
    return s.str();
}

inline CellField step(const Grid1D& g, double l, double r, double x0 = 0.0) {
    return project([=](double x) { return x < x0 ? l : r; }, g);
}

inline ChromState chroma_riemann(const Grid1D& g, const double* F) {
    return ChromState({step(g, F[0], F[2]), step(g, F[1], F[3])});
}

// Riemann fixtures (u1, u2 | u1, u2) for the split/direct, admissibility and semigroup criteria.
inline const double chroma_fixtures[5][4] = {
    {1, 1, 0, 0}, {2, 0, 0, 2}, {0, 0, 1, 1}, {0.5, 1, 1, 0.25}, {0.2, 0.8, 1.5, 0.5}};

inline ScalarConfig transport_config(double t_end, std::size_t records) {
    ScalarConfig cfg;
    cfg.t_end = t_end;
    cfg.record_steps = true;
    cfg.record_times = uniform_times(t_end, records);
    cfg.coupled_speed = coupled_velocity_bound(chromatography_velocity);
    return cfg;
}

inline CellField random_pieces(const Grid1D& g, std::mt19937& rng, double lo, double hi, int pieces, double a,
                               double b) {
    std::uniform_real_distribution<double> val(lo, hi);
    std::vector<double> vals(static_cast<std::size_t>(pieces));
    for (auto& v : vals) v = val(rng);
    return project(
        [&](double x) {
            const double s = std::clamp((x - a) / (b - a), 0.0, 1.0);
            return vals[std::min(vals.size() - 1, static_cast<std::size_t>(s * pieces))];
        },
        g);
}

inline std::vector<std::size_t> ladder(Level level, std::vector<std::size_t> full, std::size_t fast_count) {
    if (level == Level::fast && full.size() > fast_count) full.resize(fast_count);
    return full;
}

}  // namespace detail

// 1. Godunov vs the exact Riemann solution for v/(1+v).
inline Result scalar_riemann(Level level) {
    using namespace detail;
    Check c;
    const auto f = chromatography_flux();
    for (auto [vl, vr] : {std::pair{0.0, 1.0}, std::pair{1.0, 0.0}}) {
        double prev = 0.0;
        std::string errs;
        for (std::size_t n : ladder(level, {512, 1024, 2048, 4096}, 2)) {
            const auto g = make_grid(-0.5, 1.5, n);
            const auto traj = solve_scalar(f, step(g, vl, vr), ScalarConfig{});
            const auto fan = riemann_fan(f, vl, vr);
            const double err = lp_distance(traj.back(), project([&](double x) { return riemann_eval(f, fan, x); }, g),
                                           Norm::l1);
            if (n == 512) c.expect(err <= 0.02, "L1 error at n=512");
            if (prev > 0.0) c.expect(prev / err >= 1.4, "ratio at n=" + std::to_string(n));
            prev = err;
            errs += (errs.empty() ? "" : ",") + sci(err);
        }
        c.note(vl < vr ? "shock" : "fan", errs);
    }
    return {1, "scalar Riemann convergence", c.pass(), c.text()};
}

// 2. Comparison and TVD defects on random piecewise-constant pairs.
inline Result kruzkov_estimates(Level) {
    using namespace detail;
    Check c;
    std::mt19937 rng(2024);
    const auto f = chromatography_flux();
    const auto g = make_grid(-4, 4, 512);
    std::uniform_real_distribution<double> radius(0.5, 2.0);
    double worst_cmp = 0.0, worst_tvd = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_pieces(g, rng, 0.0, 2.0, 5, -1.0, 1.0);
        const auto b = random_pieces(g, rng, 0.0, 2.0, 5, -1.0, 1.0);
        ScalarConfig cfg;
        cfg.record_times = uniform_times(1.0, 4);
        const auto ua = solve_scalar(f, a, cfg), ub = solve_scalar(f, b, cfg);
        const double L = f.speed_bound(0.0, 2.0), R = radius(rng);
        worst_cmp = std::max({worst_cmp, comparison_defect(ua, ub, R, L), comparison_defect(ub, ua, R, L)});
        worst_tvd = std::max({worst_tvd, tvd_defect(ua), tvd_defect(ub)});
    }
    c.expect(worst_cmp <= 1e-12, "comparison defect");
    c.expect(worst_tvd <= 1e-12, "TVD defect");
    c.note("comparison", sci(worst_cmp));
    c.note("tvd", sci(worst_tvd));
    return {2, "Kruzkov comparison and TVD", c.pass(), c.text()};
}

// 3. One-sided Oleinik bound for rho^2 on the non-transonic fan 1|2.
inline Result oleinik(Level) {
    using namespace detail;
    Check c;
    const auto g = make_grid(-1, 5, 1024);
    const auto f = burgers_flux();
    ScalarConfig cfg;
    cfg.record_times = {0.25, 0.5, 1.0};
    const auto traj = solve_scalar(f, step(g, 1.0, 2.0), cfg);
    for (std::size_t k = 1; k < traj.size(); ++k) {
        const double t = traj.times[k];
        const double excess = oleinik_excess(traj.fields[k], t, f.c, Convexity::convex);
        c.expect(excess <= 2.0 * g.dx / (f.c * t * t), "excess at t=" + std::to_string(t));
        c.note("t" + std::to_string(t).substr(0, 4), sci(excess));
    }
    return {3, "Oleinik one-sided bound", c.pass(), c.text()};
}

// 4. Weighted contraction and sign structure of lambda-upwind transport.
inline Result weighted_contraction(Level) {
    using namespace detail;
    Check c;
    std::mt19937 rng(7);
    const auto g = make_grid(-1.5, 2.5, 512);
    double worst = -1.0;
    for (int trial = 0; trial < 10; ++trial) {
        auto v0 = random_pieces(g, rng, 0.0, 2.0, 7, -0.5, 0.5);
        if (trial % 3 == 0) v0[200] = v0[201] = 0.0;
        const bool positive = trial % 2 == 1;
        const auto lam = random_pieces(g, rng, positive ? 0.0 : -1.0, 1.0, 9, -0.5, 0.5);
        const auto w0 = zip_fields(lam, v0, [](double l, double v) { return l * v; });
        const auto vt = solve_scalar(chromatography_flux(), v0, transport_config(1.0, 10));
        const auto wt = solve_continuity_upwind(vt, chromatography_velocity, w0);
        const double n0 = weighted_sup_norm(w0, v0).value;
        for (std::size_t k = 0; k < wt.size(); ++k) {
            const auto& w = wt.fields[k];
            const auto& v = vt.fields[k];
            const double nk = weighted_sup_norm(w, v).value;
            worst = std::max(worst, nk - n0);
            c.expect(nk <= n0 + 1e-12, "weighted norm grew");
            for (std::size_t i = 0; i < g.n; ++i) {
                c.expect(std::abs(w[i]) <= v[i], "|w| <= v");
                if (positive) c.expect(w[i] >= 0.0, "w >= 0");
            }
        }
    }
    c.note("max_norm_increase", sci(worst));
    return {4, "weighted contraction and sign structure", c.pass(), c.text()};
}

// 5. Renormalization residual on the smooth transported fixture.
inline Result renormalization(Level) {
    using namespace detail;
    Check c;
    const double C = 0.5, trend = 1.7;
    std::vector<double> r2, ra;
    for (std::size_t n : {256u, 512u}) {
        const auto g = make_grid(-1, 2, n);
        const auto v0 = project([](double x) { return 1.5 - 0.5 * std::tanh(x / 0.2); }, g);
        const auto w0 = zip_fields(project([](double x) { return 0.1 + 0.8 * std::sin(2 * std::numbers::pi * x); }, g),
                                   v0, [](double l, double v) { return l * v; });
        const auto vt = solve_scalar(chromatography_flux(), v0, transport_config(1.0, 200));
        const auto wt = solve_continuity_upwind(vt, chromatography_velocity, w0);
        const auto pair = make_transport_pair(vt, chromatography_velocity);
        const auto u = ratio_trajectory(wt, vt);
        const auto tests = bump_family(0.05, 1.0, -0.5, 1.5, 3, 6);
        const double h = g.dx + 1.0 / std::stod(vt.meta.at("steps"));
        r2.push_back(renorm_residual(pair, u, [](double s) { return s * s; }, tests));
        ra.push_back(renorm_residual(pair, u, [](double s) { return std::abs(s); }, tests));
        c.expect(r2.back() <= C * h, "u^2 residual at n=" + std::to_string(n));
        c.expect(ra.back() <= C * h, "|u| residual at n=" + std::to_string(n));
        c.note("n" + std::to_string(n), sci(r2.back() / h) + "/" + sci(ra.back() / h));
    }
    c.expect(r2[0] / r2[1] >= trend && ra[0] / ra[1] >= trend, "halving trend");
    c.note("ratios", sci(r2[0] / r2[1]) + "/" + sci(ra[0] / ra[1]));
    return {5, "renormalization residual", c.pass(), c.text()};
}

// 6. Split solve against the Lax-Friedrichs system solver.
inline Result split_vs_direct(Level level) {
    using namespace detail;
    Check c;
    for (const auto& F : chroma_fixtures) {
        double prev = 1e300;
        std::string gaps;
        for (std::size_t n : ladder(level, {512, 1024, 2048}, 2)) {
            const auto g = make_grid(-0.5, 1.5, n);
            const auto U0 = chroma_riemann(g, F);
            const double gap = state_distance(solve_chromatography(U0, ChromaConfig{}).back(),
                                              solve_direct(U0, DirectConfig{}).back());
            if (n == 512) c.expect(gap <= 0.05, "gap at n=512");
            c.expect(gap < prev, "gap not decreasing at n=" + std::to_string(n));
            prev = gap;
            gaps += (gaps.empty() ? "" : ",") + sci(gap);
        }
        c.note("fx", gaps);
    }
    return {6, "split vs direct chromatography", c.pass(), c.text()};
}

// 7. Entropy compatibility, lift projection and admissibility.
inline Result entropy_machinery(Level) {
    using namespace detail;
    Check c;
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> Cd(-3.0, 3.0), ud(0.1, 1.0), sd(-1.0, 1.0), qd(0.0, 3.0);
    auto random_pair = [&] {
        const double a = ud(rng), b = ud(rng), cc = sd(rng), d = sd(rng);
        return entropy_pair_from_derivative(
            "random", [=](double v) { return a * v * v + b * std::exp(cc * v) + d * v; },
            [=](double v) { return 2 * a * v + b * cc * std::exp(cc * v) + d; }, chromatography_flux());
    };
    std::vector<std::vector<double>> states;
    for (int i = 0; i < 40; ++i) states.push_back({qd(rng), qd(rng)});
    double worst_compat = 0.0;
    for (int trial = 0; trial < 50; ++trial)
        worst_compat = std::max(worst_compat, entropy_compat_defect(lift_entropy(random_pair(), Cd(rng)), states));
    c.expect(worst_compat <= 1e-8, "compatibility defect");

    const std::vector<double> levels{0.25, 0.5, 1.0, 1.5, 2.0, 3.0};
    double worst_fit = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto scalar = random_pair();
        const double C = Cd(rng);
        const auto fit = project_onto_lifted(lift_entropy(scalar, C).eta, levels);
        worst_fit = std::max(worst_fit, std::abs(fit.C - C));
        for (std::size_t j = 0; j < levels.size(); ++j)
            worst_fit = std::max(worst_fit, std::abs(fit.eta_tilde[j] - scalar.eta(levels[j])));
    }
    c.expect(worst_fit <= 1e-6, "projection recovery");

    const auto g = make_grid(-0.5, 1.5, 512);
    const auto pairs = lifted_kruzkov_family({0.25, 0.5, 0.75, 1.25, 1.75}, {-1.0, 0.0, 1.0});
    const auto tests = bump_family(0.05, 1.0, -0.4, 1.4, 4, 8);
    const double tol = 0.75 * g.dx;
    ChromaConfig cfg;
    cfg.record_times = uniform_times(1.0, 200);
    double worst_adm = 0.0;
    for (const auto& F : chroma_fixtures)
        worst_adm = std::max(worst_adm, admissibility_residual(solve_chromatography(chroma_riemann(g, F), cfg), pairs, tests));
    c.expect(worst_adm <= tol, "admissibility of split fixtures");
    SystemTrajectory control;
    for (double t : cfg.record_times) {
        const auto half = project([t](double x) { return x < t / 3.0 ? 1.0 : 0.0; }, g);
        control.push(t, ChromState({half, half}));
    }
    const double ctrl = admissibility_residual(control, pairs, tests);
    c.expect(ctrl >= 10 * tol, "expansion-shock control not detected");
    c.note("compat", sci(worst_compat));
    c.note("fit", sci(worst_fit));
    c.note("adm/tol", sci(worst_adm / tol));
    c.note("control/tol", sci(ctrl / tol));
    return {7, "entropy machinery", c.pass(), c.text()};
}

// 8. Invariance of the G and F regimes.
inline Result domain_invariance(Level) {
    using namespace detail;
    Check c;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 2.0), pos(0.2, 2.0);
    const auto g = make_grid(-3, 4, 512);
    ChromaConfig cfg;
    cfg.t_end = 1.5;
    cfg.record_times = uniform_times(1.5, 6);
    double min_comp = 1e300;
    for (int trial = 0; trial < 8; ++trial) {
        const bool G = trial % 2 == 0;
        auto draw = [&] { return G ? pos(rng) : u(rng); };
        std::vector<double> a(3), b(3);
        for (auto& x : a) x = draw();
        for (auto& x : b) x = draw();
        const ChromState U0({project([&](double x) { return x < -0.5 ? a[0] : (x < 0.7 ? a[1] : a[2]); }, g),
                             project([&](double x) { return x < -0.2 ? b[0] : (x < 0.4 ? b[1] : b[2]); }, g)});
        const auto traj = solve_chromatography(U0, cfg);
        const CellField v0 = to_vw(U0).v;
        const double R = 1.0, L = 1.0;
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const auto& U = traj.states[k];
            min_comp = std::min(min_comp, U.min_component());
            c.expect(U.min_component() >= -1e-14, "negative component");
            if (G) {
                const auto rep =
                    check_domain(U, DomainClass::G, Window::symmetric(R), g_floor(v0, R, L, traj.times[k]) - 1e-12);
                c.expect(rep.pass, "G floor: " + rep.reason);
            } else {
                c.expect(total_variation(traj.v.fields[k]) <= total_variation(v0) + 1e-12, "TV of v grew");
            }
        }
    }
    c.note("min_component", sci(min_comp));
    return {8, "domain invariance", c.pass(), c.text()};
}

// 9. Semigroup property in fixed-step mode.
inline Result semigroup(Level) {
    using namespace detail;
    Check c;
    const auto g = make_grid(-0.5, 1.5, 200);
    ChromaConfig cfg;
    cfg.fixed_dt = 0.004;
    double worst = 0.0;
    for (const auto& F : chroma_fixtures)
        for (auto [t, s] : {std::pair{0.4, 0.2}, std::pair{0.2, 0.6}, std::pair{0.5, 0.5}}) {
            const double d = semigroup_defect(chroma_riemann(g, F), t, s, cfg);
            worst = std::max(worst, d);
            c.expect(d <= 1e-12, "semigroup defect");
        }
    c.note("max_defect", sci(worst));
    return {9, "semigroup property", c.pass(), c.text()};
}

// 10. Keyfitz-Kranzer modulus against the scalar entropy solution.
inline Result keyfitz_kranzer(Level level) {
    using namespace detail;
    Check c;
    const auto f = [](double r) { return r; };
    const auto df = [](double) { return 1.0; };
    auto polar = [](const CellField& rho, const CellField& a) {
        return KKState({zip_fields(rho, a, [](double r, double t) { return r * std::cos(t); }),
                        zip_fields(rho, a, [](double r, double t) { return r * std::sin(t); })});
    };
    double prev = 0.0, worst_excess = 0.0;
    std::string gaps;
    for (std::size_t n : ladder(level, {512, 1024, 2048}, 2)) {
        const auto g = make_grid(-1, 3, n);
        const auto traj = solve_kk(polar(step(g, 0.5, 1.0), step(g, 0.0, std::numbers::pi / 2)), f, df, KKConfig{});
        const auto d = renormalization_defect(traj);
        worst_excess = std::max(worst_excess, d.pointwise_excess);
        if (n == 512) c.expect(d.l1_gap <= 0.05, "gap at n=512");
        if (prev > 0.0) c.expect(prev / d.l1_gap >= 1.3, "gap ratio at n=" + std::to_string(n));
        prev = d.l1_gap;
        gaps += (gaps.empty() ? "" : ",") + sci(d.l1_gap);
    }
    c.expect(worst_excess <= 1e-12, "pointwise excess");
    const auto g = make_grid(-1, 3, 512);
    const auto rho0 = project([](double x) { return x < 0 ? 0.5 : (x < 1 ? 1.0 : 0.3); }, g);
    const auto fixed = renormalization_defect(solve_kk(polar(rho0, CellField::constant(g, 0.7)), f, df, KKConfig{}));
    c.expect(fixed.l1_gap <= 1e-10 && fixed.pointwise_excess <= 1e-12, "constant-direction gap");
    c.note("excess", sci(worst_excess));
    c.note("gaps", gaps);
    c.note("constant_dir", sci(fixed.l1_gap));
    return {10, "Keyfitz-Kranzer renormalization", c.pass(), c.text()};
}

// 11. Depauw-type fields: stage contract, mixing, strong variant, BV blow-up, divergence.
inline Result depauw(Level) {
    using namespace detail;
    Check c;
    const int k_max = 6, m = 8;
    const Grid2D g = make_grid2d(m);
    double worst_div = 0.0;
    for (int k = 2; k <= k_max; ++k) {
        const StageMap st = build_stage(k, g);  // throws construction-bug if the contract fails
        c.expect(st.apply(chessboard(k, g)) == chessboard(k - 1, g), "(a) stage " + std::to_string(k));
        worst_div = std::max(worst_div, st.max_divergence);
    }
    c.expect(worst_div <= 1e-12, "(e) divergence");

    const auto modes = low_fourier_modes();
    double finest_pairing = 0.0, min_bv_t = 1e300, worst_sup = 0.0, worst_end = 0.0;
    for (auto v : {DepauwVariant::original, DepauwVariant::strong}) {
        const DepauwFlow flow = make_depauw_flow(make_schedule(v, k_max), g);
        std::vector<double> ts{0.0};
        for (const auto& st : flow.schedule.stages)
            for (int q = 0; q < 8; ++q) ts.push_back(st.start + st.length() * q / 8);
        ts.push_back(flow.schedule.t_end());
        const auto rows = mixing_report(nontrivial_branch(flow, ts), modes);
        for (std::size_t i = 1; i < rows.size(); ++i) c.expect(rows[i].l1 == 1.0, "(b) L1 norm");
        finest_pairing = std::max(finest_pairing, rows[1].max_pairing);  // t = start of the finest stage
        c.expect(rows[1].max_pairing <= 0.1, "(b) weak pairing");

        for (const auto& st : flow.schedule.stages) {
            std::vector<double> tq;
            for (int q = 0; q <= 16; ++q) tq.push_back(st.start + st.length() * q / 16);
            tq.back() = std::nextafter(st.end, 0.0);
            const auto fd = field_diagnostics(flow, tq);
            for (std::size_t q = 0; q < fd.size(); ++q) {
                if (v == DepauwVariant::strong) {
                    worst_sup = std::max(worst_sup, fd[q].sup_norm * st.index / 2.0);
                    c.expect(fd[q].sup_norm <= 2.0 / st.index + 1e-15, "(c) sup on J_k");
                }
                // Strong variant: psi_k >= 1 on the middle half of J_k.
                const bool interior = v == DepauwVariant::original || (q >= 4 && q <= 12);
                if (interior) {
                    min_bv_t = std::min(min_bv_t, fd[q].bv_norm * fd[q].t);
                    c.expect(fd[q].bv_norm >= 0.1 / fd[q].t, "(d) BV >= 0.1/t");
                }
            }
            if (v == DepauwVariant::strong) {
                worst_end = std::max({worst_end, fd.front().sup_norm, fd.back().sup_norm});
                c.expect(fd.front().sup_norm <= 1e-12 && fd.back().sup_norm <= 1e-12, "(c) endpoint sup");
            }
        }
    }
    c.note("pairing", sci(finest_pairing));
    c.note("sup*k/2", sci(worst_sup));
    c.note("endpoint_sup", sci(worst_end));
    c.note("min_bv*t", sci(min_bv_t));
    c.note("div", sci(worst_div));
    return {11, "Depauw dichotomy", c.pass(), c.text()};
}

// 12. Lambda-upwind vs mollified characteristics on the G fixture.
inline Result cross_solver(Level level) {
    using namespace detail;
    Check c;
    const double C = 0.1;
    for (double mult : {4.0, 8.0}) {
        double prev = 1e300;
        std::string gaps;
        for (std::size_t n : ladder(level, {512, 1024, 2048}, 2)) {
            const auto g = make_grid(-0.5, 1.5, n);
            const auto v0 = step(g, 2.0, 1.0);
            const auto w0 = zip_fields(project([](double x) { return 0.5 + 0.25 * std::tanh(x / 0.1); }, g), v0,
                                       [](double l, double v) { return l * v; });
            const auto vt = solve_scalar(chromatography_flux(), v0, transport_config(1.0, 100));
            const auto wt = solve_continuity_upwind(vt, chromatography_velocity, w0);
            const double eps = mult * g.dx;
            const auto ct = solve_by_characteristics(make_transport_pair(vt, chromatography_velocity), w0,
                                                     MollifierSpec{eps}, {1.0});
            const double gap = lp_distance(ct.back(), wt.back(), Norm::l1);
            c.expect(gap <= C * (std::sqrt(g.dx) + eps), "gap bound at n=" + std::to_string(n));
            c.expect(gap < prev, "gap not decreasing at n=" + std::to_string(n));
            prev = gap;
            gaps += (gaps.empty() ? "" : ",") + sci(gap);
        }
        c.note("eps" + std::to_string(static_cast<int>(mult)) + "dx", gaps);
    }
    return {12, "cross-solver uniqueness surrogate", c.pass(), c.text()};
}

inline std::vector<std::function<Result(Level)>> criteria() {
    return {scalar_riemann,    kruzkov_estimates, oleinik,         weighted_contraction,
            renormalization,   split_vs_direct,   entropy_machinery, domain_invariance,
            semigroup,         keyfitz_kranzer,   depauw,          cross_solver};
}

/// Library modules each criterion drives (criterion id -> modules).
inline std::map<int, std::vector<std::string>> criterion_modules() {
    return {{1, {"core", "scalar"}},          {2, {"core", "scalar"}},
            {3, {"scalar"}},                  {4, {"scalar", "transport"}},
            {5, {"transport"}},               {6, {"chroma", "scalar", "transport"}},
            {7, {"chroma", "scalar"}},        {8, {"chroma"}},
            {9, {"chroma"}},                  {10, {"kk", "transport"}},
            {11, {"depauw"}},                 {12, {"transport", "chroma"}}};
}

/// Runs the selected criteria (all when `only` is empty), printing one line each.
inline std::vector<Result> run(Level level, std::ostream& out, const std::vector<int>& only = {}) {
    std::vector<Result> results;
    const auto all = criteria();
    for (std::size_t i = 0; i < all.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Result r;
        try {
            r = all[i](level);
        } catch (const std::exception& e) {
            r = {id, "criterion " + std::to_string(id), false, std::string(" error: ") + e.what()};
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char head[96];
        std::snprintf(head, sizeof head, "[%s] C%02d %-36s (%6.1f s)", r.pass ? "PASS" : "FAIL", r.id,
                      r.title.c_str(), r.seconds);
        out << head << r.detail << std::endl;
        results.push_back(r);
    }
    return results;
}

inline bool all_passed(const std::vector<Result>& rs) {
    return std::all_of(rs.begin(), rs.end(), [](const Result& r) { return r.pass; });
}

}  // namespace splitsolve::acceptance
