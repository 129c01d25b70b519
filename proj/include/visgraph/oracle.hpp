#ifndef VISGRAPH_ORACLE_HPP
#define VISGRAPH_ORACLE_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "visgraph/visibility_graph.hpp"

// Brute-force reference constructions. Every pair (i, j) is checked against
// every intermediate k directly from the visibility inequalities, O(n^3).
// Kept independent of the sweep used by build_nvg / build_hvg.
namespace visgraph::oracle {

using EdgeSet = std::vector<std::pair<std::size_t, std::size_t>>;

// y_k < y_j + (y_i - y_j) (j - k) / (j - i) for all i < k < j
inline EdgeSet natural_edges(std::span<const double> y) {
    EdgeSet out;
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = i + 1; j < y.size(); ++j) {
            bool visible = true;
            for (std::size_t k = i + 1; k < j && visible; ++k) {
                const double sight = y[j] + ((y[i] - y[j]) * static_cast<double>(j - k)) / static_cast<double>(j - i);
                visible = y[k] < sight;
            }
            if (visible) out.emplace_back(i, j);
        }
    return out;
}

// y_k < y_i and y_k < y_j for all i < k < j
inline EdgeSet horizontal_edges(std::span<const double> y) {
    EdgeSet out;
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = i + 1; j < y.size(); ++j) {
            bool visible = true;
            for (std::size_t k = i + 1; k < j && visible; ++k) visible = y[k] < y[i] && y[k] < y[j];
            if (visible) out.emplace_back(i, j);
        }
    return out;
}

inline std::size_t left_degree(const EdgeSet& edges, std::size_t node) {
    std::size_t k = 0;
    for (const auto& [u, v] : edges)
        if (v == node) ++k;
    return k;
}

// Sum over all length-r walks from `start` ending at a node != start of the
// product of edge values along the walk, by explicit enumeration.
// `matrix` is dense n x n (0 where no edge).
inline double walk_sum(const std::vector<std::vector<double>>& matrix, std::size_t start, int r) {
    const std::size_t n = matrix.size();
    double total = 0.0;
    // depth-first enumeration of walks
    auto rec = [&](auto&& self, std::size_t at, int remaining, double product) -> void {
        if (remaining == 0) {
            if (at != start) total += product;
            return;
        }
        for (std::size_t next = 0; next < n; ++next)
            if (matrix[at][next] != 0.0) self(self, next, remaining - 1, product * matrix[at][next]);
    };
    rec(rec, start, r, 1.0);
    return total;
}

// Same enumeration with |weights|; the magnitude against which floating
// round-off in walk_sum is measured.
inline double walk_abs_sum(const std::vector<std::vector<double>>& matrix, std::size_t start, int r) {
    auto abs_matrix = matrix;
    for (auto& row : abs_matrix)
        for (auto& v : row) v = std::fabs(v);
    return walk_sum(abs_matrix, start, r);
}

}  // namespace visgraph::oracle

#endif  // VISGRAPH_ORACLE_HPP
