#ifndef VISGRAPH_DESCRIPTORS_HPP
#define VISGRAPH_DESCRIPTORS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "visgraph/error.hpp"
#include "visgraph/visibility_graph.hpp"

namespace visgraph {

// How "degree at distance r" is counted.
//   walks: sum over j != i of (M^r)_ij, M the adjacency (or weight) matrix;
//   shell: number of nodes at shortest-path hop distance exactly r.
enum class PoolingMode { walks, shell };

inline std::string_view to_string(PoolingMode mode) {
    return mode == PoolingMode::walks ? "walks" : "shell";
}

inline std::optional<PoolingMode> pooling_mode_from_string(std::string_view s) {
    if (s == "walks") return PoolingMode::walks;
    if (s == "shell") return PoolingMode::shell;
    return std::nullopt;
}

namespace detail {

// y = M x for the (weighted) adjacency matrix of g.
inline void apply_adjacency(const VisibilityGraph& g, const std::vector<double>& x, std::vector<double>& y) {
    const bool use_weights = g.weighted();
    for (std::size_t i = 0; i < g.size(); ++i) {
        double acc = 0.0;
        for (const auto& nb : g.neighbors(i)) acc += (use_weights ? nb.weight : 1.0) * x[nb.node];
        y[i] = acc;
    }
}

inline double edge_value(const VisibilityGraph& g, const Neighbor& nb) {
    return g.weighted() ? nb.weight : 1.0;
}

// Diagonal of M^r: closed walks of length r. Closed forms for r <= 3,
// otherwise (M^r)_ii = <M^a e_i, M^b e_i> with a + b = r, propagated sparsely
// from each node.
inline std::vector<double> closed_walks(const VisibilityGraph& g, int r) {
    const std::size_t n = g.size();
    std::vector<double> diag(n, 0.0);
    if (r == 1) return diag;
    if (r == 2) {
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& nb : g.neighbors(i)) {
                const double w = edge_value(g, nb);
                diag[i] += w * w;
            }
        return diag;
    }
    if (r == 3) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto ni = g.neighbors(i);
            double acc = 0.0;
            for (const auto& j : ni) {
                const auto nj = g.neighbors(j.node);
                // merge the two sorted neighbor lists
                auto a = ni.begin();
                auto b = nj.begin();
                while (a != ni.end() && b != nj.end()) {
                    if (a->node < b->node) {
                        ++a;
                    } else if (b->node < a->node) {
                        ++b;
                    } else {
                        acc += edge_value(g, j) * edge_value(g, *b) * edge_value(g, *a);
                        ++a;
                        ++b;
                    }
                }
            }
            diag[i] = acc;
        }
        return diag;
    }

    const int a_steps = (r + 1) / 2;
    const int b_steps = r - a_steps;
    std::vector<double> cur(n, 0.0), next(n, 0.0), half_b(n, 0.0);
    std::vector<std::size_t> support, next_support;
    std::vector<char> in_next(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        support.assign(1, i);
        cur[i] = 1.0;
        for (int step = 1; step <= a_steps; ++step) {
            next_support.clear();
            for (std::size_t u : support) {
                for (const auto& nb : g.neighbors(u)) {
                    if (!in_next[nb.node]) {
                        in_next[nb.node] = 1;
                        next_support.push_back(nb.node);
                    }
                    next[nb.node] += edge_value(g, nb) * cur[u];
                }
            }
            for (std::size_t u : support) cur[u] = 0.0;
            for (std::size_t u : next_support) {
                cur[u] = next[u];
                next[u] = 0.0;
                in_next[u] = 0;
            }
            std::swap(support, next_support);
            if (step == b_steps)
                for (std::size_t u : support) half_b[u] = cur[u];
        }
        double acc = 0.0;
        for (std::size_t u : support) {
            acc += cur[u] * half_b[u];
            cur[u] = 0.0;
        }
        diag[i] = acc;
        std::fill(half_b.begin(), half_b.end(), 0.0);
    }
    return diag;
}

inline std::vector<double> shell_counts(const VisibilityGraph& g, int r) {
    const std::size_t n = g.size();
    std::vector<double> out(n, 0.0);
    std::vector<int> dist(n, -1);
    std::vector<std::size_t> frontier, next, touched;
    for (std::size_t s = 0; s < n; ++s) {
        touched.assign(1, s);
        frontier.assign(1, s);
        dist[s] = 0;
        for (int depth = 1; depth <= r && !frontier.empty(); ++depth) {
            next.clear();
            for (std::size_t u : frontier)
                for (const auto& nb : g.neighbors(u))
                    if (dist[nb.node] < 0) {
                        dist[nb.node] = depth;
                        next.push_back(nb.node);
                        touched.push_back(nb.node);
                    }
            std::swap(frontier, next);
        }
        out[s] = static_cast<double>(frontier.size());
        for (std::size_t u : touched) dist[u] = -1;
    }
    return out;
}

}  // namespace detail

// Degree of every node at distance r. In walks mode this counts length-r walks
// (weighted graphs: sums of weight products along walks) ending at a node other
// than the start; r = 1 is the ordinary (weighted) degree.
inline std::vector<double> degree_at_distance(const VisibilityGraph& g, int r,
                                              PoolingMode mode = PoolingMode::walks) {
    if (r < 1) fail(ErrorKind::invalid_argument, "distance r must be >= 1, got " + std::to_string(r));
    if (g.size() == 0) fail(ErrorKind::invalid_input, "graph has no nodes");

    if (mode == PoolingMode::shell) return detail::shell_counts(g, r);

    const std::size_t n = g.size();
    std::vector<double> x(n, 1.0), y(n, 0.0);
    for (int step = 0; step < r; ++step) {
        detail::apply_adjacency(g, x, y);
        std::swap(x, y);
    }
    const std::vector<double> diag = detail::closed_walks(g, r);
    for (std::size_t i = 0; i < n; ++i) x[i] -= diag[i];
    return x;
}

// Ordinary (unweighted) degrees sorted ascending, whatever the graph kind.
inline std::vector<double> degree_sequence(const VisibilityGraph& g) {
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = static_cast<double>(g.degree(i));
    std::sort(out.begin(), out.end());
    return out;
}

// One contiguous component of a descriptor, e.g. "HD1" or "DS".
struct DescriptorBlock {
    std::string label;
    std::size_t offset = 0;
    std::size_t length = 0;
    std::optional<PoolingMode> mode;  // unset for blocks that do not pool by distance

    friend bool operator==(const DescriptorBlock&, const DescriptorBlock&) = default;
};

struct DescriptorVector {
    std::vector<double> values;
    std::vector<DescriptorBlock> blocks;
    bool normalized = false;

    std::size_t size() const noexcept { return values.size(); }

    // Block labels joined with '+', e.g. "HD1+DS".
    std::string scheme() const {
        std::string s;
        for (const auto& b : blocks) {
            if (!s.empty()) s += '+';
            s += b.label;
        }
        return s;
    }
};

inline std::string distance_label(GraphKind kind, int r) {
    return std::string(1, kind_code(kind)) + "D" + std::to_string(r);
}

inline DescriptorVector make_descriptor(std::string label, std::vector<double> values,
                                        std::optional<PoolingMode> mode = std::nullopt) {
    DescriptorVector v;
    v.blocks.push_back({std::move(label), 0, values.size(), mode});
    v.values = std::move(values);
    return v;
}

// Single-block descriptor: degree at distance r, labelled e.g. "ND2".
inline DescriptorVector pool_distance(const VisibilityGraph& g, int r, PoolingMode mode = PoolingMode::walks) {
    return make_descriptor(distance_label(g.kind(), r), degree_at_distance(g, r, mode), mode);
}

inline DescriptorVector pool_degree_sequence(const VisibilityGraph& g) {
    return make_descriptor("DS", degree_sequence(g));
}

// Min-max rescale of each block to [0, 1]; constant blocks become zeros.
inline DescriptorVector normalize(DescriptorVector v) {
    if (v.values.empty()) fail(ErrorKind::invalid_argument, "cannot normalize an empty descriptor");
    for (std::size_t k = 0; k < v.values.size(); ++k)
        if (!std::isfinite(v.values[k]))
            fail(ErrorKind::invalid_input, "descriptor entry " + std::to_string(k) + " is not finite");

    for (const auto& b : v.blocks) {
        if (b.length == 0) continue;
        auto first = v.values.begin() + static_cast<std::ptrdiff_t>(b.offset);
        auto last = first + static_cast<std::ptrdiff_t>(b.length);
        const auto [lo_it, hi_it] = std::minmax_element(first, last);
        const double lo = *lo_it;
        const double range = *hi_it - lo;
        for (auto it = first; it != last; ++it) {
            if (range > 0.0) {
                // clamp guards the last-ulp overshoot of (x - lo) / range
                *it = std::clamp((*it - lo) / range, 0.0, 1.0);
            } else {
                *it = 0.0;
            }
        }
    }
    v.normalized = true;
    return v;
}

// Concatenates parts in order; labels are joined with '+'.
inline DescriptorVector combine(const std::vector<DescriptorVector>& parts) {
    if (parts.empty()) fail(ErrorKind::invalid_argument, "combine needs at least one part");
    DescriptorVector out;
    out.normalized = true;
    for (const auto& p : parts) {
        const std::size_t base = out.values.size();
        out.values.insert(out.values.end(), p.values.begin(), p.values.end());
        for (auto b : p.blocks) {
            b.offset += base;
            out.blocks.push_back(std::move(b));
        }
        out.normalized = out.normalized && p.normalized;
    }
    return out;
}

struct DistanceDegreeProfile {
    std::size_t node = 0;
    PoolingMode mode = PoolingMode::walks;
    std::vector<std::pair<int, double>> pairs;  // (r, d), r = 1..r_max
};

inline DistanceDegreeProfile distance_profile(const VisibilityGraph& g, std::size_t node, int r_max,
                                              PoolingMode mode = PoolingMode::walks) {
    if (node >= g.size())
        fail(ErrorKind::invalid_argument,
             "node " + std::to_string(node) + " out of range for graph of size " + std::to_string(g.size()));
    if (r_max < 1) fail(ErrorKind::invalid_argument, "r_max must be >= 1");
    DistanceDegreeProfile p;
    p.node = node;
    p.mode = mode;
    for (int r = 1; r <= r_max; ++r) p.pairs.emplace_back(r, degree_at_distance(g, r, mode)[node]);
    return p;
}

}  // namespace visgraph

#endif  // VISGRAPH_DESCRIPTORS_HPP
