#include <gtest/gtest.h>

#include <cmath>

#include "splitsolve/kk/kk.hpp"
#include "splitsolve/scalar/entropy.hpp"
#include "splitsolve/scalar/estimates.hpp"

using namespace splitsolve;

namespace {

const auto ident = [](double r) { return r; };
const auto one = [](double) { return 1.0; };

KKState polar(const CellField& rho, const CellField& angle) {
    return KKState({zip_fields(rho, angle, [](double r, double a) { return r * std::cos(a); }),
                    zip_fields(rho, angle, [](double r, double a) { return r * std::sin(a); })});
}

KKState rotating_riemann(const Grid1D& g, double rl, double rr) {
    return polar(project([=](double x) { return x < 0 ? rl : rr; }, g),
                 project([](double x) { return x < 0 ? 0.0 : M_PI / 2; }, g));
}

}  // namespace

TEST(KKFlux, Examples) {
    const auto sq = kk_flux(ident, one, 0.0, 2.0);
    EXPECT_NEAR(sq.c, 2.0, 1e-6);
    EXPECT_DOUBLE_EQ(sq.g(1.5), 2.25);
    EXPECT_DOUBLE_EQ(sq.dg(1.5), 3.0);
    try {
        kk_flux(one, [](double) { return 0.0; }, 0.0, 2.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_flux);
    }
    const auto shifted = kk_flux([](double r) { return r + 1; }, one, 0.5, 3.0);
    EXPECT_NEAR(shifted.c, 2.0, 1e-6);
    EXPECT_DOUBLE_EQ(shifted.g(2.0), 6.0);
    // f = rho^2: [rho^3]'' = 6 rho, so c is the value at the lower end.
    EXPECT_NEAR(kk_flux([](double r) { return r * r; }, [](double r) { return 2 * r; }, 0.5, 2.0).c, 3.0, 1e-6);
}

TEST(SolveKK, ConstantDirectionIsAFixedPoint) {
    const auto g = make_grid(-1, 3, 256);
    const auto rho0 = project([](double x) { return x < 0 ? 0.5 : (x < 1 ? 1.0 : 0.3); }, g);
    const double alpha = 0.7;
    const auto traj = solve_kk(polar(rho0, CellField::constant(g, alpha)), ident, one, KKConfig{});
    ScalarConfig sc;
    sc.coupled_speed = coupled_velocity_bound(ident);
    const auto scalar = solve_scalar(kk_flux(ident, one, rho0.min(), rho0.max()), rho0, sc);
    ASSERT_EQ(traj.rho.times, scalar.times);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        EXPECT_EQ(traj.rho.fields[k].values, scalar.fields[k].values);
        for (std::size_t i = 0; i < g.n; ++i) {
            const double r = traj.rho.fields[k][i];
            EXPECT_NEAR(traj.states[k][0][i], r * std::cos(alpha), 1e-15);
            EXPECT_NEAR(traj.states[k][1][i], r * std::sin(alpha), 1e-15);
        }
    }
    const auto d = renormalization_defect(traj);
    EXPECT_LE(d.pointwise_excess, 1e-12);
    EXPECT_LE(d.l1_gap, 1e-10);
}

TEST(SolveKK, ConstantAndScalarCases) {
    const auto g = make_grid(0, 1, 40);
    const auto flat = solve_kk(KKState({CellField::constant(g, 0.3), CellField::constant(g, -0.4)}), ident, one, KKConfig{});
    for (const auto& s : flat.states) {
        for (double x : s[0].values) EXPECT_EQ(x, 0.3);
        for (double x : s[1].values) EXPECT_EQ(x, -0.4);
    }
    const auto u0 = project([](double x) { return x < 0.4 ? 1.0 : 0.5; }, g);
    const auto single = solve_kk(KKState({u0}), ident, one, KKConfig{});
    for (std::size_t k = 0; k < single.size(); ++k) EXPECT_EQ(single.states[k][0].values, single.rho.fields[k].values);
}

TEST(SolveKK, VacuumIsRejected) {
    const auto g = make_grid(-1, 1, 40);
    const auto rho = project([](double x) { return std::abs(x) < 0.5 ? 1.0 : 0.0; }, g);
    const auto U = polar(rho, CellField::constant(g, 0.3));
    try {
        solve_kk(U, ident, one, KKConfig{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::hypothesis_violation);
    }
    // Vacuum outside the declared window is allowed and stays untouched far away.
    KKConfig cfg;
    cfg.window = Window{-0.4, 0.4};
    cfg.t_end = 0.2;
    const auto traj = solve_kk(U, ident, one, cfg);
    EXPECT_EQ(renormalization_defect(traj, Window{-1.0, -0.7}).l1_gap, 0.0);
    EXPECT_LE(renormalization_defect(traj).pointwise_excess, 1e-12);
}

TEST(Renormalization, VaryingDirectionGapShrinks) {
    double previous = 0.0;
    for (std::size_t n : {256u, 512u, 1024u}) {
        const auto g = make_grid(-1, 3, n);
        const auto traj = solve_kk(rotating_riemann(g, 0.5, 1.0), ident, one, KKConfig{});
        const auto d = renormalization_defect(traj);
        EXPECT_LE(d.pointwise_excess, 1e-12);
        EXPECT_LE(d.l1_gap, 0.5 * std::sqrt(g.dx));
        if (previous > 0.0) {
            EXPECT_GE(previous / d.l1_gap, 1.3);
        }
        previous = d.l1_gap;
    }
}

TEST(Renormalization, ModulusIsAnEntropySolution) {
    const auto g = make_grid(-1, 3, 1024);
    KKConfig cfg;
    cfg.record_times = uniform_times(1.0, 100);
    const auto traj = solve_kk(rotating_riemann(g, 0.5, 1.0), ident, one, cfg);
    const double c = traj.flux.c;
    for (double t : {0.25, 0.5, 1.0})
        EXPECT_LE(oleinik_excess(traj.rho.fields[traj.rho.index_of(t)], t, c, Convexity::convex), 2 * g.dx / (c * t * t));
    const auto tests = bump_family(0.05, 1.0, -0.8, 2.8, 4, 8);
    for (double k : {0.6, 0.75, 0.9}) EXPECT_LE(entropy_residual(traj.rho, kruzkov_pair(traj.flux, k), tests), g.dx);
    // Strong attainment of the initial modulus: monotone decay towards t = 0.
    const auto omega = strong_continuity_modulus(traj.rho, 0.0);
    for (std::size_t k = 1; k < omega.size(); ++k) EXPECT_GE(omega[k].second, omega[k - 1].second);
}

// Different step sizes give the same limit; the gap is set by contact smearing (~dx^0.65).
TEST(SolveKK, StepSizeIndependence) {
    double previous = 0.0;
    for (std::size_t n : {256u, 512u, 1024u}) {
        const auto g = make_grid(-1, 3, n);
        const auto U = rotating_riemann(g, 1.0, 0.5);
        KKConfig slow;
        slow.cfl = 0.3;
        const double gap = state_distance(solve_kk(U, ident, one, KKConfig{}).back(), solve_kk(U, ident, one, slow).back());
        EXPECT_LE(gap, 0.1 * std::sqrt(g.dx));
        if (previous > 0.0) {
            EXPECT_GE(previous / gap, 1.3);
        }
        previous = gap;
    }
}
