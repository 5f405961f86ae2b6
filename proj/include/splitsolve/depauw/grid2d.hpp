#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "splitsolve/core/measures.hpp"
#include "splitsolve/error.hpp"

namespace splitsolve {

/// Periodic unit square split into 2^m x 2^m cells; cell (i, j) has x-index i.
struct Grid2D {
    int m = 1;
    std::size_t n = 2;
    double dx = 0.5;

    std::size_t size() const { return n * n; }
    std::size_t index(std::size_t i, std::size_t j) const { return j * n + i; }
    double center(std::size_t i) const { return (static_cast<double>(i) + 0.5) * dx; }
    std::size_t wrap(long long i) const {
        const long long nn = static_cast<long long>(n);
        return static_cast<std::size_t>(((i % nn) + nn) % nn);
    }

    friend bool operator==(const Grid2D& a, const Grid2D& b) { return a.m == b.m; }
};

inline Grid2D make_grid2d(int m) {
    if (m < 1 || m > 12) fail(ErrorKind::invalid_argument, "2d grid level must lie in [1, 12]");
    const std::size_t n = std::size_t{1} << m;
    return Grid2D{m, n, 1.0 / static_cast<double>(n)};
}

struct CellField2D {
    Grid2D grid;
    std::vector<double> values;

    CellField2D() = default;
    CellField2D(const Grid2D& g, double c) : grid(g), values(g.size(), c) {}

    double& at(std::size_t i, std::size_t j) { return values[grid.index(i, j)]; }
    double at(std::size_t i, std::size_t j) const { return values[grid.index(i, j)]; }

    friend bool operator==(const CellField2D& a, const CellField2D& b) {
        return a.grid == b.grid && a.values == b.values;
    }
};

/// +-1 pattern with square tiles of side 2^-k, +1 on the tile at the origin.
inline CellField2D chessboard(int k, const Grid2D& g) {
    if (k < 0) fail(ErrorKind::invalid_argument, "chessboard level must be nonnegative");
    if (k > g.m)
        fail(ErrorKind::unresolved_scale,
             "chessboard level " + std::to_string(k) + " exceeds grid level " + std::to_string(g.m));
    const std::size_t s = g.n >> k;
    CellField2D out(g, 0.0);
    for (std::size_t j = 0; j < g.n; ++j)
        for (std::size_t i = 0; i < g.n; ++i) out.at(i, j) = ((i / s + j / s) % 2 == 0) ? 1.0 : -1.0;
    return out;
}

inline double mass2d(const CellField2D& f) {
    CompensatedSum s;
    for (double v : f.values) s.add(v);
    return s.value() * f.grid.dx * f.grid.dx;
}

inline double l1_norm2d(const CellField2D& f) {
    CompensatedSum s;
    for (double v : f.values) s.add(std::abs(v));
    return s.value() * f.grid.dx * f.grid.dx;
}

inline double sup_norm2d(const CellField2D& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

inline double l1_distance2d(const CellField2D& a, const CellField2D& b) {
    if (!(a.grid == b.grid)) fail(ErrorKind::invalid_argument, "fields live on different grids");
    CompensatedSum s;
    for (std::size_t c = 0; c < a.values.size(); ++c) s.add(std::abs(a.values[c] - b.values[c]));
    return s.value() * a.grid.dx * a.grid.dx;
}

/// Integral of f times a smooth function sampled at cell centres.
inline double pairing2d(const CellField2D& f, const std::function<double(double, double)>& phi) {
    const Grid2D& g = f.grid;
    CompensatedSum s;
    for (std::size_t j = 0; j < g.n; ++j)
        for (std::size_t i = 0; i < g.n; ++i) s.add(f.at(i, j) * phi(g.center(i), g.center(j)));
    return s.value() * g.dx * g.dx;
}

/// L1 norm after averaging over boxes of side 2^-j.
inline double coarse_l1(const CellField2D& f, int j) {
    const Grid2D& g = f.grid;
    if (j < 0 || j > g.m) fail(ErrorKind::invalid_argument, "coarse-graining level out of range");
    const std::size_t b = g.n >> j, boxes = std::size_t{1} << j;
    CompensatedSum total;
    for (std::size_t by = 0; by < boxes; ++by)
        for (std::size_t bx = 0; bx < boxes; ++bx) {
            CompensatedSum box;
            for (std::size_t j2 = by * b; j2 < (by + 1) * b; ++j2)
                for (std::size_t i2 = bx * b; i2 < (bx + 1) * b; ++i2) box.add(f.at(i2, j2));
            total.add(std::abs(box.value()));
        }
    return total.value() * g.dx * g.dx;
}

/// Periodic total variation: jumps across every cell face weighted by face length.
inline double total_variation2d(const CellField2D& f) {
    const Grid2D& g = f.grid;
    CompensatedSum s;
    for (std::size_t j = 0; j < g.n; ++j)
        for (std::size_t i = 0; i < g.n; ++i) {
            s.add(std::abs(f.at(g.wrap(static_cast<long long>(i) + 1), j) - f.at(i, j)));
            s.add(std::abs(f.at(i, g.wrap(static_cast<long long>(j) + 1)) - f.at(i, j)));
        }
    return s.value() * g.dx;
}

}  // namespace splitsolve
