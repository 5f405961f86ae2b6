#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "splitsolve/depauw/grid2d.hpp"

namespace splitsolve {

// Stage k moves the 2x2-tile blocks offset by one tile (corners at odd
// multiples of h = 2^-k).  On such a block the fine chessboard and the coarse
// one agree up to the sign (-1)^(P+Q); blocks with P+Q odd are turned a
// quarter counterclockwise, which flips the diagonal pattern.  The flow is a
// square vortex: stream function (r^2 - h^2) / (2h) with r the sup-distance
// to the block centre, so every square contour shifts by a quarter of its
// perimeter over a time 2h at unit amplitude, and |a| <= 1.

/// Cell permutation for one dyadic stage plus its divergence-free MAC field.
struct StageMap {
    int level = 2;
    Grid2D grid;
    std::vector<std::size_t> dest;  // cell c moves to dest[c]
    std::vector<double> psi;        // nodal stream function, node (I, J) at (I dx, J dx)
    std::vector<double> flux_x;     // through the left face of cell (i, j)
    std::vector<double> flux_y;     // through the bottom face of cell (i, j)
    double sup_norm = 0.0;
    double bv_norm = 0.0;
    double max_divergence = 0.0;    // largest |net face flux| of a cell

    double h() const { return std::ldexp(1.0, -level); }
    /// Duration of a full quarter turn at unit amplitude.
    double duration() const { return 2.0 * h(); }

    CellField2D apply(const CellField2D& f) const {
        if (!(f.grid == grid)) fail(ErrorKind::invalid_argument, "field grid does not match stage grid");
        CellField2D out(grid, 0.0);
        for (std::size_t c = 0; c < dest.size(); ++c) out.values[dest[c]] = f.values[c];
        return out;
    }

    bool rotated(long long P, long long Q) const { return ((P + Q) % 2 + 2) % 2 == 1; }

    /// Where the point (x, y) started when a fraction theta of the quarter turn has elapsed.
    std::pair<double, double> preimage(double x, double y, double theta) const {
        const double hh = h();
        auto locate = [hh](double z, long long& B) {
            double Z = z - hh;
            Z -= std::floor(Z);
            B = static_cast<long long>(std::floor(Z / (2.0 * hh)));
            return Z - static_cast<double>(B) * 2.0 * hh - hh;
        };
        long long P = 0, Q = 0;
        const double lx = locate(x, P), ly = locate(y, Q);
        if (!rotated(P, Q)) return {x, y};
        const double r = std::max(std::abs(lx), std::abs(ly));
        if (r == 0.0) return {x, y};
        double s;
        if (lx == r && ly != -r) s = ly + r;
        else if (ly == r) s = 3.0 * r - lx;
        else if (lx == -r) s = 5.0 * r - ly;
        else s = 7.0 * r + lx;
        s -= theta * 2.0 * r;
        s -= 8.0 * r * std::floor(s / (8.0 * r));
        double px, py;
        if (s < 2.0 * r) { px = r; py = -r + s; }
        else if (s < 4.0 * r) { px = 3.0 * r - s; py = r; }
        else if (s < 6.0 * r) { px = -r; py = 5.0 * r - s; }
        else { px = s - 7.0 * r; py = -r; }
        auto wrap = [](double z) { return z - std::floor(z); };
        const double cx = hh + 2.0 * hh * static_cast<double>(P) + hh;
        const double cy = hh + 2.0 * hh * static_cast<double>(Q) + hh;
        return {wrap(cx + px), wrap(cy + py)};
    }

    /// Cell-centred velocity at unit amplitude.
    std::pair<double, double> cell_velocity(std::size_t i, std::size_t j) const {
        const std::size_t ip = grid.wrap(static_cast<long long>(i) + 1);
        const std::size_t jp = grid.wrap(static_cast<long long>(j) + 1);
        return {(flux_x[grid.index(i, j)] + flux_x[grid.index(ip, j)]) / (2.0 * grid.dx),
                (flux_y[grid.index(i, j)] + flux_y[grid.index(i, jp)]) / (2.0 * grid.dx)};
    }
};

inline StageMap build_stage(int k, const Grid2D& g) {
    if (k < 2)
        fail(ErrorKind::invalid_argument,
             "stages start at level 2 (no permutation maps a mean-zero pattern to chessboard(0))");
    if (k > g.m)
        fail(ErrorKind::unresolved_scale,
             "stage level " + std::to_string(k) + " exceeds grid level " + std::to_string(g.m));
    StageMap st;
    st.level = k;
    st.grid = g;
    const std::size_t n = g.n, s = n >> k, block = 2 * s;
    const long long ns = static_cast<long long>(s);
    const double hh = st.h();

    // Offset-block coordinates of a cell or node index: block number and local index.
    auto split = [&](std::size_t i) {
        const std::size_t u = g.wrap(static_cast<long long>(i) - ns);
        return std::pair<long long, std::size_t>{static_cast<long long>(u / block), u % block};
    };

    st.dest.resize(g.size());
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const auto [P, p] = split(i);
            const auto [Q, q] = split(j);
            std::size_t ti = i, tj = j;
            if (st.rotated(P, Q)) {
                const std::size_t np = block - 1 - q, nq = p;
                ti = g.wrap(P * static_cast<long long>(block) + static_cast<long long>(np) + ns);
                tj = g.wrap(Q * static_cast<long long>(block) + static_cast<long long>(nq) + ns);
            }
            st.dest[g.index(i, j)] = g.index(ti, tj);
        }

    st.psi.assign(g.size(), 0.0);
    for (std::size_t J = 0; J < n; ++J)
        for (std::size_t I = 0; I < n; ++I) {
            const auto [P, a] = split(I);
            const auto [Q, b] = split(J);
            if (!st.rotated(P, Q)) continue;
            const double ox = (static_cast<double>(a) - static_cast<double>(s)) * g.dx;
            const double oy = (static_cast<double>(b) - static_cast<double>(s)) * g.dx;
            const double r = std::max(std::abs(ox), std::abs(oy));
            st.psi[g.index(I, J)] = (r * r - hh * hh) / (2.0 * hh);
        }

    st.flux_x.assign(g.size(), 0.0);
    st.flux_y.assign(g.size(), 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t ip = g.wrap(static_cast<long long>(i) + 1);
            const std::size_t jp = g.wrap(static_cast<long long>(j) + 1);
            st.flux_x[g.index(i, j)] = -(st.psi[g.index(i, jp)] - st.psi[g.index(i, j)]);
            st.flux_y[g.index(i, j)] = st.psi[g.index(ip, j)] - st.psi[g.index(i, j)];
        }

    CellField2D ux(g, 0.0), uy(g, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t ip = g.wrap(static_cast<long long>(i) + 1);
            const std::size_t jp = g.wrap(static_cast<long long>(j) + 1);
            const double net = st.flux_x[g.index(ip, j)] - st.flux_x[g.index(i, j)] +
                               st.flux_y[g.index(i, jp)] - st.flux_y[g.index(i, j)];
            st.max_divergence = std::max(st.max_divergence, std::abs(net));
            st.sup_norm = std::max({st.sup_norm, std::abs(st.flux_x[g.index(i, j)]) / g.dx,
                                    std::abs(st.flux_y[g.index(i, j)]) / g.dx});
            const auto [vx, vy] = st.cell_velocity(i, j);
            ux.at(i, j) = vx;
            uy.at(i, j) = vy;
        }
    st.bv_norm = total_variation2d(ux) + total_variation2d(uy);

    // Self-check of the stage contract.
    std::vector<char> hit(g.size(), 0);
    for (std::size_t d : st.dest) {
        if (d >= g.size() || hit[d]) fail(ErrorKind::construction_bug, "stage map is not a bijection");
        hit[d] = 1;
    }
    if (!(st.apply(chessboard(k, g)) == chessboard(k - 1, g)))
        fail(ErrorKind::construction_bug,
             "stage " + std::to_string(k) + " does not map chessboard(k) onto chessboard(k-1)");
    if (st.max_divergence > 1e-12) fail(ErrorKind::construction_bug, "stage field is not divergence free");
    if (st.sup_norm > 1.0) fail(ErrorKind::construction_bug, "stage field exceeds unit amplitude");
    return st;
}

}  // namespace splitsolve
