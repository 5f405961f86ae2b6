#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "splitsolve/core/field.hpp"
#include "splitsolve/core/measures.hpp"
#include "splitsolve/core/test_function.hpp"
#include "splitsolve/core/trajectory.hpp"

using namespace splitsolve;

namespace {

CellField random_field(const Grid1D& g, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> v(g.n);
    for (auto& x : v) x = u(rng);
    return CellField(g, v);
}

}  // namespace

TEST(Grid, CellWidth) {
    EXPECT_DOUBLE_EQ(make_grid(0, 1, 4).dx, 0.25);
    EXPECT_DOUBLE_EQ(make_grid(-2, 2, 8).dx, 0.5);
}

TEST(Grid, RejectsDegenerateInput) {
    EXPECT_THROW(make_grid(1, 1, 4), Error);
    EXPECT_THROW(make_grid(0, 1, 1), Error);
    EXPECT_THROW(make_grid(0, INFINITY, 4), Error);
    try {
        make_grid(1, 1, 4);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_argument);
    }
}

TEST(Project, MidpointSampling) {
    const auto g = make_grid(0, 1, 2);
    const auto f = project([](double x) { return x; }, g);
    EXPECT_DOUBLE_EQ(f[0], 0.25);
    EXPECT_DOUBLE_EQ(f[1], 0.75);

    const auto c = project([](double) { return 3.0; }, make_grid(-5, 7, 13));
    for (double v : c.values) EXPECT_EQ(v, 3.0);

    const auto s = project([](double x) { return x < 0 ? -1.0 : 1.0; }, make_grid(-1, 1, 10));
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(s[i], -1.0);
    for (std::size_t i = 5; i < 10; ++i) EXPECT_EQ(s[i], 1.0);
}

TEST(Project, RejectsNonfiniteSamples) {
    EXPECT_THROW(project([](double x) { return 1.0 / x; }, make_grid(-1, 1, 2 + 1)), Error);
}

TEST(TotalVariation, Examples) {
    const auto g = make_grid(0, 1, 10);
    EXPECT_EQ(total_variation(CellField::constant(g, 2.0)), 0.0);
    EXPECT_EQ(total_variation(project([](double x) { return x < 0.5 ? 0.0 : 1.0; }, g)), 1.0);

    // Alternating +-1 in blocks of 3 cells: count the sign changes directly.
    const auto g2 = make_grid(0, 1, 30);
    const auto cb = project([](double x) { return (static_cast<int>(x * 10) % 2) ? -1.0 : 1.0; }, g2);
    int changes = 0;
    for (std::size_t i = 0; i + 1 < cb.size(); ++i) changes += cb[i] != cb[i + 1];
    EXPECT_EQ(changes, 9);
    EXPECT_DOUBLE_EQ(total_variation(cb), 2.0 * changes);
}

TEST(TotalVariation, EmptyWindowIsAnError) {
    const auto g = make_grid(0, 1, 10);
    EXPECT_THROW(total_variation(CellField::constant(g, 1.0), Window{2.0, 3.0}), Error);
}

TEST(TotalVariation, NonnegativeAndZeroOnlyForConstants) {
    std::mt19937 rng(7);
    const auto g = make_grid(-1, 1, 40);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = random_field(g, rng);
        EXPECT_GT(total_variation(f), 0.0);
    }
    EXPECT_EQ(total_variation(CellField::constant(g, -0.3)), 0.0);
}

TEST(Mass, Examples) {
    EXPECT_NEAR(mass(CellField::constant(make_grid(0, 1, 17), 1.0)), 1.0, 1e-15);
    const auto odd = project([](double x) { return x * x * x - x; }, make_grid(-1, 1, 64));
    EXPECT_NEAR(mass(odd), 0.0, 1e-15);
    const auto ind = project([](double x) { return x <= 0.5 ? 1.0 : 0.0; }, make_grid(0, 1, 100));
    EXPECT_NEAR(mass(ind), 0.5, 1e-15);
}

TEST(Mass, LinearInTheField) {
    std::mt19937 rng(11);
    const auto g = make_grid(-3, 2, 57);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random_field(g, rng), b = random_field(g, rng);
        const double alpha = 0.7, beta = -1.3;
        const auto comb = zip_fields(a, b, [&](double x, double y) { return alpha * x + beta * y; });
        EXPECT_NEAR(mass(comb), alpha * mass(a) + beta * mass(b), 1e-13);
        auto phi = [](double x) { return std::cos(x); };
        EXPECT_NEAR(weak_pairing(comb, phi), alpha * weak_pairing(a, phi) + beta * weak_pairing(b, phi),
                    1e-13);
    }
}

TEST(LpDistance, Examples) {
    const auto g = make_grid(0, 1, 20);
    const auto a = project([](double x) { return std::sin(7 * x); }, g);
    EXPECT_EQ(lp_distance(a, a, Norm::l1), 0.0);
    const auto b = map_field(a, [](double v) { return v - 1.0; });
    EXPECT_NEAR(lp_distance(a, b, Norm::l1), 1.0, 1e-14);
    const auto c = project([](double x) { return x < 0.5 ? 1.0 : 0.0; }, g);
    EXPECT_EQ(lp_distance(c, CellField::constant(g, 0.0), Norm::linf), 1.0);
    EXPECT_THROW(lp_distance(a, CellField::constant(make_grid(0, 1, 21), 0.0), Norm::l1), Error);
}

TEST(LpDistance, TriangleInequality) {
    std::mt19937 rng(3);
    const auto g = make_grid(0, 2, 33);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_field(g, rng), b = random_field(g, rng), c = random_field(g, rng);
        for (Norm p : {Norm::l1, Norm::linf})
            EXPECT_LE(lp_distance(a, c, p), lp_distance(a, b, p) + lp_distance(b, c, p) + 1e-14);
    }
}

TEST(WeakPairing, Examples) {
    const auto g = make_grid(0, 1, 64);
    EXPECT_EQ(weak_pairing(CellField::constant(g, 0.0), [](double) { return 5.0; }), 0.0);
    EXPECT_NEAR(weak_pairing(CellField::constant(g, 1.0), [](double) { return 1.0; }), 1.0, 1e-15);
    const auto cb = project([](double x) { return (static_cast<int>(x * 8) % 2) ? -1.0 : 1.0; }, g);
    EXPECT_NEAR(weak_pairing(cb, [](double) { return 1.0; }), 0.0, 1e-15);
}

TEST(CompensatedSum, ReductionOrderIndependent) {
    std::vector<double> xs;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 10000; ++i) xs.push_back(u(rng));
    const double forward = compensated_sum(xs);
    std::reverse(xs.begin(), xs.end());
    EXPECT_NEAR(compensated_sum(xs), forward, 1e-14 * 1e3);
}

TEST(Trajectory, RejectsNonIncreasingTimes) {
    Trajectory t;
    const auto g = make_grid(0, 1, 4);
    t.push(0.0, CellField::constant(g, 1.0));
    EXPECT_THROW(t.push(0.0, CellField::constant(g, 1.0)), Error);
    EXPECT_THROW(t.push(1.0, CellField::constant(make_grid(0, 1, 5), 1.0)), Error);
}

TEST(Interpolate, LinearBetweenMidpoints) {
    const auto g = make_grid(0, 1, 10);
    const auto f = project([](double x) { return 2 * x + 1; }, g);
    EXPECT_NEAR(interpolate(f, 0.33), 1.66, 1e-14);
    EXPECT_EQ(interpolate(f, -5.0), f[0]);
    EXPECT_EQ(interpolate(f, 5.0), f[9]);
}

TEST(WeakIntegral, ExactConservationLawHasZeroResidual) {
    // u(t, x) = sin(x - t) solves u_t + u_x = 0.
    const auto g = make_grid(0, 6, 600);
    const auto times = uniform_times(2.0, 400);
    const auto traj = sample_trajectory(g, times, [](double t, double x) { return std::sin(x - t); });
    const auto tf = bump_test(1.0, 0.5, 3.0, 1.0);
    const double r = weak_integral(
        g, times, tf, [&](std::size_t k, std::size_t i) { return traj.fields[k][i]; },
        [&](std::size_t k, std::size_t i) { return traj.fields[k][i]; });
    EXPECT_NEAR(r, 0.0, 1e-4);
}
