#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "splitsolve/core/measures.hpp"
#include "splitsolve/scalar/entropy.hpp"
#include "splitsolve/scalar/estimates.hpp"
#include "splitsolve/scalar/riemann.hpp"
#include "splitsolve/scalar/solver.hpp"

using namespace splitsolve;

namespace {

CellField riemann_data(const Grid1D& g, double vl, double vr, double x0 = 0.0) {
    return project([=](double x) { return x < x0 ? vl : vr; }, g);
}

// Brute-force extremum of g over [min(a,b), max(a,b)] on a fine sample.
double brute_godunov(const FluxFunction& f, double a, double b) {
    const double lo = std::min(a, b), hi = std::max(a, b);
    double best = f.g(lo);
    for (int k = 0; k <= 100000; ++k) {
        const double v = f.g(lo + (hi - lo) * k / 100000.0);
        best = a <= b ? std::min(best, v) : std::max(best, v);
    }
    return best;
}

CellField random_piecewise_constant(const Grid1D& g, std::mt19937& rng, double lo, double hi,
                                    int pieces, double support_lo, double support_hi,
                                    double far_value) {
    std::uniform_real_distribution<double> val(lo, hi), pos(support_lo, support_hi);
    std::vector<double> cuts(static_cast<std::size_t>(pieces) - 1);
    for (auto& c : cuts) c = pos(rng);
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> vals(static_cast<std::size_t>(pieces));
    for (auto& v : vals) v = val(rng);
    return project(
        [&](double x) {
            if (x < support_lo || x > support_hi) return far_value;
            std::size_t k = 0;
            while (k < cuts.size() && x > cuts[k]) ++k;
            return vals[k];
        },
        g);
}

}  // namespace

TEST(GodunovFlux, ChromatographyExamples) {
    const auto f = chromatography_flux();
    EXPECT_DOUBLE_EQ(godunov_flux(f, 0.0, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(godunov_flux(f, 1.0, 0.0), 0.5);
    for (double a : {0.0, 0.3, 2.0}) EXPECT_EQ(godunov_flux(f, a, a), f.g(a));
}

TEST(GodunovFlux, MatchesBruteForceExtremum) {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const auto b = burgers_flux();
    auto quartic = burgers_flux();
    quartic.convexity = Convexity::none;  // force the sampled path
    quartic.g = [](double v) { return v * v * v * v - v * v; };
    quartic.dg = [](double v) { return 4 * v * v * v - 2 * v; };
    for (int trial = 0; trial < 200; ++trial) {
        const double a = u(rng), c = u(rng);
        EXPECT_NEAR(godunov_flux(b, a, c), brute_godunov(b, a, c), 1e-9);
        EXPECT_NEAR(godunov_flux(quartic, a, c), brute_godunov(quartic, a, c), 1e-8);
    }
}

TEST(RiemannEval, ChromatographyExamples) {
    const auto f = chromatography_flux();
    // Rarefaction: invert 1/(1+v)^2 = 4/9.
    EXPECT_NEAR(riemann_eval(f, 1.0, 0.0, 4.0 / 9.0), 0.5, 1e-12);
    // Shock of speed 1/2; xi = 0.4 lies behind it.
    EXPECT_EQ(riemann_eval(f, 0.0, 1.0, 0.4), 0.0);
    EXPECT_EQ(riemann_eval(f, 0.0, 1.0, 0.6), 1.0);
    const auto fan = riemann_fan(f, 0.0, 1.0);
    EXPECT_EQ(fan.kind, RiemannFan::Kind::shock);
    EXPECT_DOUBLE_EQ(fan.speed, 0.5);
    for (double xi : {-3.0, 0.0, 0.7}) EXPECT_EQ(riemann_eval(f, 0.8, 0.8, xi), 0.8);
}

TEST(RiemannEval, FanSatisfiesLaxAndRankineHugoniot) {
    const auto b = burgers_flux();
    const auto shock = riemann_fan(b, 2.0, -1.0);
    ASSERT_EQ(shock.kind, RiemannFan::Kind::shock);
    EXPECT_DOUBLE_EQ(shock.speed, 1.0);
    EXPECT_GE(b.dg(2.0), shock.speed);
    EXPECT_LE(b.dg(-1.0), shock.speed);
    const auto rare = riemann_fan(b, 1.0, 2.0);
    ASSERT_EQ(rare.kind, RiemannFan::Kind::rarefaction);
    EXPECT_EQ(rare.xi_lo, 2.0);
    EXPECT_EQ(rare.xi_hi, 4.0);
    EXPECT_NEAR(riemann_eval(b, rare, 3.0), 1.5, 1e-12);
}

TEST(RiemannEval, RejectsNonmonotoneSpeed) {
    FluxFunction cubic;
    cubic.id = "cubic";
    cubic.g = [](double v) { return v * v * v; };
    cubic.dg = [](double v) { return 3 * v * v; };
    EXPECT_NO_THROW(riemann_eval(cubic, 0.5, 1.0, 1.0));
    try {
        riemann_eval(cubic, -1.0, 1.0, 0.0);
        FAIL() << "expected unsupported-flux";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::unsupported_flux);
    }
}

TEST(CflDt, Examples) {
    const auto g = make_grid(0, 1, 100);
    const auto ramp = project([](double x) { return x; }, make_grid(0, 1, 1000));
    // Burgers on range [0, 1]: L = 2.
    auto two_valued = CellField(g, std::vector<double>(100, 0.0));
    two_valued[99] = 1.0;
    EXPECT_NEAR(cfl_dt(burgers_flux(), two_valued, 0.45), 0.00225, 1e-16);
    // Chromatography: g' <= 1 on v >= 0.
    EXPECT_GE(cfl_dt(chromatography_flux(), ramp, 0.45), 0.45 * ramp.grid.dx);
    const auto flat = CellField::constant(g, 3.0);
    EXPECT_DOUBLE_EQ(cfl_dt(burgers_flux(), flat, 0.45), 0.45 * 0.01 / 6.0);
    EXPECT_DOUBLE_EQ(cfl_dt(burgers_flux(), CellField::constant(g, 0.0), 0.45), 0.45 * 0.01);
}

TEST(SolveScalar, ConstantDataIsAFixedPoint) {
    const auto g = make_grid(-1, 1, 64);
    ScalarConfig cfg;
    cfg.record_times = {0.3, 0.7};
    const auto traj = solve_scalar(chromatography_flux(), CellField::constant(g, 0.7), cfg);
    ASSERT_EQ(traj.size(), 4u);
    for (const auto& f : traj.fields)
        for (double v : f.values) EXPECT_EQ(v, 0.7);
}

TEST(SolveScalar, ShockMovesAtRankineHugoniotSpeed) {
    const auto f = chromatography_flux();
    const auto g = make_grid(-0.5, 1.5, 400);
    ScalarConfig cfg;
    const auto traj = solve_scalar(f, riemann_data(g, 0.0, 1.0), cfg);
    // Mass balance fixes the shock position: the step sits at x = t/2.
    const auto& v = traj.back();
    const double inflow_mass = mass(v) - 1.0 * (1.5 - 0.0);
    const double shock_position = -inflow_mass;  // region (x_s, 1.5) holds v = 1
    EXPECT_NEAR(shock_position, 0.5, 2 * g.dx);
    EXPECT_EQ(v[g.n - 1], 1.0);
    EXPECT_EQ(v[0], 0.0);
}

TEST(SolveScalar, ConvergesToExactRiemannSolution) {
    const auto f = chromatography_flux();
    for (auto [vl, vr] : {std::pair{1.0, 0.0}, std::pair{0.0, 1.0}}) {
        double previous = 0.0;
        for (std::size_t n : {128u, 256u, 512u}) {
            const auto g = make_grid(-0.5, 1.5, n);
            const auto traj = solve_scalar(f, riemann_data(g, vl, vr), ScalarConfig{});
            const auto fan = riemann_fan(f, vl, vr);
            const auto exact = project([&](double x) { return riemann_eval(f, fan, x); }, g);
            const double err = lp_distance(traj.back(), exact, Norm::l1);
            if (previous > 0.0) {
                EXPECT_GE(previous / err, 1.4) << "n = " << n;
            }
            previous = err;
        }
    }
}

TEST(SolveScalar, RecordTimesAreHitExactly) {
    ScalarConfig cfg;
    cfg.t_end = 0.9;
    cfg.record_times = {0.5, 0.1, 0.3};
    const auto traj = solve_scalar(burgers_flux(), riemann_data(make_grid(-1, 2, 50), 1, 0), cfg);
    const std::vector<double> expected{0.0, 0.1, 0.3, 0.5, 0.9};
    EXPECT_EQ(traj.times, expected);
}

TEST(SolveScalar, RejectsNegativeChromatographyData) {
    const auto g = make_grid(0, 1, 10);
    EXPECT_THROW(solve_scalar(chromatography_flux(), CellField::constant(g, -0.1), ScalarConfig{}),
                 Error);
    ScalarConfig bad;
    bad.cfl = 1.2;
    EXPECT_THROW(solve_scalar(burgers_flux(), CellField::constant(g, 0.1), bad), Error);
}

TEST(SolveScalar, FixedStepModeRequiresAlignedTimes) {
    ScalarConfig cfg;
    cfg.fixed_dt = 0.01;
    cfg.t_end = 0.105;
    EXPECT_THROW(solve_scalar(burgers_flux(), riemann_data(make_grid(-1, 1, 40), 1, 0), cfg), Error);
    cfg.t_end = 0.1;
    EXPECT_NO_THROW(solve_scalar(burgers_flux(), riemann_data(make_grid(-1, 1, 40), 1, 0), cfg));
}

TEST(SolveScalar, NaNIsReportedAsBlowup) {
    FluxFunction bad = burgers_flux();
    bad.id = "explodes";
    bad.g = [](double v) { return v > 0.5 ? NAN : v * v; };
    try {
        solve_scalar(bad, riemann_data(make_grid(-1, 1, 20), 1.0, 0.0), ScalarConfig{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::numerical_blowup);
        EXPECT_NE(std::string(e.what()).find("step"), std::string::npos);
    }
}

// TVD, maximum principle, conservation and positivity on random data.
TEST(SolveScalar, MonotoneSchemeInvariants) {
    std::mt19937 rng(42);
    const auto g = make_grid(-2, 4, 300);
    for (const auto& f : {chromatography_flux(), burgers_flux()}) {
        for (int trial = 0; trial < 8; ++trial) {
            const auto init = random_piecewise_constant(g, rng, 0.0, 2.0, 6, -1.0, 0.0, 0.0);
            ScalarConfig cfg;
            cfg.t_end = 0.5;
            cfg.record_times = {0.1, 0.2, 0.3, 0.4};
            const auto traj = solve_scalar(f, init, cfg);
            const double lo = init.min(), hi = init.max();
            for (const auto& field : traj.fields) {
                EXPECT_LE(total_variation(field), total_variation(init) + 1e-12);
                EXPECT_NEAR(mass(field), mass(init), 1e-12);
                for (double v : field.values) {
                    EXPECT_GE(v, lo);
                    EXPECT_LE(v, hi);
                    EXPECT_GE(v, 0.0);
                }
            }
        }
    }
}

TEST(SolveScalar, PeriodicBoundaryConservesMassExactly) {
    const auto g = make_grid(0, 1, 128);
    auto init = project([](double x) { return 1.0 + 0.5 * std::sin(2 * M_PI * x); }, g, Boundary::periodic);
    ScalarConfig cfg;
    cfg.t_end = 2.0;
    const auto traj = solve_scalar(burgers_flux(), init, cfg);
    EXPECT_NEAR(mass(traj.back()), mass(init), 1e-13);
}

TEST(Oleinik, Examples) {
    const auto g = make_grid(-1, 5, 600);
    EXPECT_EQ(oleinik_excess(CellField::constant(g, 2.0), 1.0, 2.0, Convexity::convex), 0.0);
    EXPECT_EQ(oleinik_excess(riemann_data(g, 2.0, 1.0), 0.1, 2.0, Convexity::convex), 0.0);
    // Exact Burgers fan (1|2) at t = 1: slope 1/(2t) equals the bound.
    const auto b = burgers_flux();
    const auto fan = riemann_fan(b, 1.0, 2.0);
    const auto exact = project([&](double x) { return riemann_eval(b, fan, x); }, g);
    EXPECT_LE(oleinik_excess(exact, 1.0, 2.0, Convexity::convex), 1e-9);
    // Increasing jump on a concave flux is fine after reflection; decreasing is not.
    EXPECT_EQ(oleinik_excess(riemann_data(g, 0.0, 1.0), 1.0, 0.1, Convexity::concave), 0.0);
    EXPECT_GT(oleinik_excess(riemann_data(g, 1.0, 0.0), 1.0, 0.1, Convexity::concave), 1.0);
    EXPECT_THROW(oleinik_excess(exact, 0.0, 2.0, Convexity::convex), Error);
}

TEST(Oleinik, GodunovRarefactionRespectsTheBound) {
    const auto g = make_grid(-1, 5, 1024);
    ScalarConfig cfg;
    cfg.record_times = {0.25, 0.5, 1.0};
    const auto traj = solve_scalar(burgers_flux(), riemann_data(g, 1.0, 2.0), cfg);
    for (std::size_t k = 1; k < traj.size(); ++k) {
        const double t = traj.times[k];
        EXPECT_LE(oleinik_excess(traj.fields[k], t, 2.0, Convexity::convex), g.dx / (t * t));
    }
}

// Only time quadrature error remains for a constant state; it decays at second order.
TEST(EntropyResidual, ConstantTrajectoryVanishesWithRefinement) {
    const auto g = make_grid(0, 1, 50);
    const auto tests = bump_family(0.05, 1.0, 0.1, 0.9, 2, 3);
    const auto pair = kruzkov_pair(chromatography_flux(), 0.2);
    auto residual = [&](int intervals) {
        const auto traj = sample_trajectory(g, uniform_times(1, intervals), [](double, double) { return 0.4; });
        return entropy_residual(traj, pair, tests);
    };
    const double coarse = residual(40), fine = residual(80);
    EXPECT_LE(fine, 1e-4);
    EXPECT_GE(coarse / fine, 3.5);
}

TEST(EntropyResidual, SeparatesEntropicAndExpansionShocks) {
    const auto f = chromatography_flux();
    const auto g = make_grid(-0.5, 1.5, 512);
    ScalarConfig cfg;
    cfg.record_times = uniform_times(1.0, 200);
    const auto good = solve_scalar(f, riemann_data(g, 0.0, 1.0), cfg);
    const auto bad = sample_trajectory(g, cfg.record_times,
                                       [](double t, double x) { return x < 0.5 * t ? 1.0 : 0.0; });
    const auto tests = bump_family(0.05, 1.0, -0.4, 1.4, 4, 8);
    double r_good = 0.0, r_bad = 0.0;
    for (double k : {0.25, 0.5, 0.75}) {
        r_good = std::max(r_good, entropy_residual(good, kruzkov_pair(f, k), tests));
        r_bad = std::max(r_bad, entropy_residual(bad, kruzkov_pair(f, k), tests));
    }
    EXPECT_LE(r_good, g.dx);
    EXPECT_GE(r_bad, 0.02);
}

TEST(EntropyResidual, RejectsTestFunctionsTouchingInitialTime) {
    const auto g = make_grid(0, 1, 10);
    const auto traj = sample_trajectory(g, uniform_times(1, 4), [](double, double) { return 0.0; });
    EXPECT_THROW(entropy_residual(traj, kruzkov_pair(burgers_flux(), 0.0), {bump_test(0.1, 0.2, 0.5, 0.1)}),
                 Error);
}

TEST(EntropyPair, QuadratureFluxSatisfiesCompatibility) {
    const auto f = chromatography_flux();
    const auto pair = entropy_pair_from_derivative(
        "square", [](double v) { return v * v; }, [](double v) { return 2 * v; }, f);
    // Closed form: q = 2 [ln(1+v) + 1/(1+v)] - 2.
    for (double v : {0.1, 1.0, 3.0})
        EXPECT_NEAR(pair.q(v), 2.0 * (std::log1p(v) + 1.0 / (1.0 + v)) - 2.0, 1e-13);
    EXPECT_LE(scalar_pair_defect(pair, f, {0.2, 0.9, 2.5}), 1e-8);
}

TEST(ComparisonDefect, Examples) {
    const auto f = chromatography_flux();
    const auto g = make_grid(-4, 4, 256);
    ScalarConfig cfg;
    cfg.record_times = {0.25, 0.5, 0.75};
    const auto lower = solve_scalar(f, riemann_data(g, 0.2, 0.5), cfg);
    const auto upper = solve_scalar(f, riemann_data(g, 0.4, 0.9), cfg);
    EXPECT_EQ(comparison_defect(lower, upper, 1.5, 1.0), 0.0);
    EXPECT_EQ(comparison_defect(upper, upper, 1.5, 1.0), 0.0);
    const auto crossing = solve_scalar(f, riemann_data(g, 0.9, 0.1), cfg);
    EXPECT_LE(comparison_defect(crossing, upper, 1.5, 1.0), 1e-12);
    EXPECT_THROW(comparison_defect(crossing, upper, 3.5, 1.0), Error);
}

TEST(ComparisonDefect, RandomCrossingData) {
    std::mt19937 rng(2024);
    const auto f = chromatography_flux();
    const auto g = make_grid(-4, 4, 256);
    std::uniform_real_distribution<double> radius(1.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        const auto a = random_piecewise_constant(g, rng, 0.0, 2.0, 5, -1.0, 1.0, 0.5);
        const auto b = random_piecewise_constant(g, rng, 0.0, 2.0, 5, -1.0, 1.0, 0.5);
        ScalarConfig cfg;
        cfg.record_times = {0.5};
        const auto ua = solve_scalar(f, a, cfg), ub = solve_scalar(f, b, cfg);
        const double L = f.speed_bound(0.0, 2.0);
        const double R = radius(rng);
        EXPECT_LE(comparison_defect(ua, ub, R, L), 1e-12);
        EXPECT_LE(comparison_defect(ub, ua, R, L), 1e-12);
    }
}
