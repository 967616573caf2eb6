#pragma once

// Minimum-cost perfect matching on a square cost matrix (Hungarian method,
// shortest augmenting paths with potentials, O(n^3)).

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rescorr {

/// cost is n x n row-major; returns assignment[row] = column.
inline std::vector<std::size_t> min_cost_assignment(const std::vector<double>& cost, std::size_t n) {
    if (cost.size() != n * n) throw std::invalid_argument("min_cost_assignment: cost is not n x n");
    if (n == 0) return {};
    const double inf = std::numeric_limits<double>::infinity();
    // 1-based internals; column 0 is the virtual start.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    for (std::size_t row = 1; row <= n; ++row) {
        match[0] = row;
        std::size_t col0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[col0] = true;
            const std::size_t r = match[col0];
            double delta = inf;
            std::size_t col1 = 0;
            for (std::size_t c = 1; c <= n; ++c) {
                if (used[c]) continue;
                const double cur = cost[(r - 1) * n + (c - 1)] - u[r] - v[c];
                if (cur < minv[c]) {
                    minv[c] = cur;
                    way[c] = col0;
                }
                if (minv[c] < delta) {
                    delta = minv[c];
                    col1 = c;
                }
            }
            for (std::size_t c = 0; c <= n; ++c) {
                if (used[c]) {
                    u[match[c]] += delta;
                    v[c] -= delta;
                } else {
                    minv[c] -= delta;
                }
            }
            col0 = col1;
        } while (match[col0] != 0);
        do {
            const std::size_t col1 = way[col0];
            match[col0] = match[col1];
            col0 = col1;
        } while (col0 != 0);
    }
    std::vector<std::size_t> assignment(n);
    for (std::size_t c = 1; c <= n; ++c) assignment[match[c] - 1] = c - 1;
    return assignment;
}

} // namespace rescorr
