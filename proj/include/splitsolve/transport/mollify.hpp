#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "splitsolve/core/field.hpp"

namespace splitsolve {

/// Gaussian kernel with standard deviation epsilon, truncated at 6 epsilon.
struct MollifierSpec {
    double epsilon = 0.0;
};

/// Discrete kernel weights for offsets -m..m cells, summing to one.
inline std::vector<double> mollifier_weights(const MollifierSpec& spec, double dx) {
    if (!(spec.epsilon > 0.0) || !std::isfinite(spec.epsilon))
        fail(ErrorKind::invalid_argument, "mollifier width must be positive");
    if (spec.epsilon < dx * (1.0 - 1e-12))
        fail(ErrorKind::invalid_argument, "mollifier width " + std::to_string(spec.epsilon) +
                                              " is below the cell size " + std::to_string(dx));
    const long m = static_cast<long>(std::floor(6.0 * spec.epsilon / dx));
    std::vector<double> w(static_cast<std::size_t>(2 * m + 1));
    double total = 0.0;
    for (long k = -m; k <= m; ++k) {
        const double s = static_cast<double>(k) * dx / spec.epsilon;
        const double v = std::exp(-0.5 * s * s);
        w[static_cast<std::size_t>(k + m)] = v;
        total += v;
    }
    for (double& v : w) v /= total;
    return w;
}

/// Discrete convolution with the kernel; ghosts follow the field's boundary policy.
inline CellField mollify(const CellField& field, const MollifierSpec& spec) {
    const auto w = mollifier_weights(spec, field.grid.dx);
    const long m = static_cast<long>(w.size() / 2);
    CellField out = field;
    for (std::size_t i = 0; i < field.size(); ++i) {
        double s = 0.0;
        for (long k = -m; k <= m; ++k)
            s += w[static_cast<std::size_t>(k + m)] * field.ghost(static_cast<long>(i) - k);
        out.values[i] = s;
    }
    return out;
}

}  // namespace splitsolve
