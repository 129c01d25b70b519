#ifndef VISGRAPH_VISIBILITY_GRAPH_HPP
#define VISGRAPH_VISIBILITY_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "visgraph/error.hpp"

namespace visgraph {

// An ordered sequence of finite reals. Value i sits at abscissa x = i.
class Series {
public:
    Series() = default;

    explicit Series(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty())
            fail(ErrorKind::invalid_input, "series must contain at least one value");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i]))
                fail(ErrorKind::invalid_input,
                     "series value at position " + std::to_string(i) + " is not finite");
        }
    }

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }

    friend bool operator==(const Series&, const Series&) = default;

private:
    std::vector<double> values_;
};

enum class GraphKind { natural, horizontal, weighted };

inline char kind_code(GraphKind kind) {
    switch (kind) {
    case GraphKind::natural: return 'N';
    case GraphKind::horizontal: return 'H';
    case GraphKind::weighted: return 'W';
    }
    return '?';
}

inline std::optional<GraphKind> kind_from_code(char c) {
    switch (c) {
    case 'N': case 'n': return GraphKind::natural;
    case 'H': case 'h': return GraphKind::horizontal;
    case 'W': case 'w': return GraphKind::weighted;
    default: return std::nullopt;
    }
}

struct Edge {
    std::size_t u;  // u < v
    std::size_t v;
    double weight;  // 1 for unweighted kinds

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
    std::size_t node;
    double weight;
};

// Undirected simple graph over series positions. Adjacency lists are kept
// sorted by neighbor index; weights are meaningful only for GraphKind::weighted.
class VisibilityGraph {
public:
    VisibilityGraph() = default;

    // Builds a graph from an explicit edge list. Used for hand-made graphs in
    // tests and for descriptor pooling on non-visibility graphs.
    static VisibilityGraph from_edges(std::size_t n, GraphKind kind, std::vector<Edge> edges) {
        VisibilityGraph g(n, kind);
        for (auto& e : edges) {
            if (e.u > e.v) std::swap(e.u, e.v);
            if (e.u == e.v)
                fail(ErrorKind::invalid_input, "self-loop on node " + std::to_string(e.u));
            if (e.v >= n)
                fail(ErrorKind::invalid_input, "edge endpoint " + std::to_string(e.v) + " out of range");
            if (kind != GraphKind::weighted) e.weight = 1.0;
            if (!std::isfinite(e.weight))
                fail(ErrorKind::invalid_input, "non-finite edge weight");
        }
        std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
            return a.u != b.u ? a.u < b.u : a.v < b.v;
        });
        for (std::size_t k = 1; k < edges.size(); ++k) {
            if (edges[k].u == edges[k - 1].u && edges[k].v == edges[k - 1].v)
                fail(ErrorKind::invalid_input, "duplicate edge {" + std::to_string(edges[k].u) + "," +
                                                   std::to_string(edges[k].v) + "}");
        }
        for (const auto& e : edges) g.add_edge(e.u, e.v, e.weight);
        g.sort_adjacency();
        return g;
    }

    std::size_t size() const noexcept { return adjacency_.size(); }
    GraphKind kind() const noexcept { return kind_; }
    bool weighted() const noexcept { return kind_ == GraphKind::weighted; }
    std::size_t edge_count() const noexcept { return edge_count_; }

    std::span<const Neighbor> neighbors(std::size_t i) const { return adjacency_.at(i); }
    std::size_t degree(std::size_t i) const { return adjacency_.at(i).size(); }

    bool has_edge(std::size_t i, std::size_t j) const { return find(i, j) != nullptr; }

    std::optional<double> weight(std::size_t i, std::size_t j) const {
        const Neighbor* nb = find(i, j);
        if (nb == nullptr) return std::nullopt;
        return nb->weight;
    }

    // Unordered edges as (u < v), sorted lexicographically.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (std::size_t u = 0; u < adjacency_.size(); ++u)
            for (const auto& nb : adjacency_[u])
                if (nb.node > u) out.push_back({u, nb.node, nb.weight});
        return out;
    }

    std::vector<std::pair<std::size_t, std::size_t>> edge_set() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        out.reserve(edge_count_);
        for (const auto& e : edges()) out.emplace_back(e.u, e.v);
        return out;
    }

private:
    friend VisibilityGraph build_nvg(const Series&);
    friend VisibilityGraph build_hvg(const Series&);
    friend VisibilityGraph build_wvg(const Series&);

    VisibilityGraph(std::size_t n, GraphKind kind) : kind_(kind), adjacency_(n) {}

    void add_edge(std::size_t u, std::size_t v, double w) {
        adjacency_[u].push_back({v, w});
        adjacency_[v].push_back({u, w});
        ++edge_count_;
    }

    void sort_adjacency() {
        for (auto& list : adjacency_)
            std::sort(list.begin(), list.end(),
                      [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    }

    const Neighbor* find(std::size_t i, std::size_t j) const {
        const auto& list = adjacency_.at(i);
        auto it = std::lower_bound(list.begin(), list.end(), j,
                                   [](const Neighbor& nb, std::size_t key) { return nb.node < key; });
        if (it == list.end() || it->node != j) return nullptr;
        return &*it;
    }

    GraphKind kind_ = GraphKind::natural;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::size_t edge_count_ = 0;
};

namespace detail {

// Natural-visibility sweep. For each i, nodes j > i are scanned in order while
// tracking the intermediate k of maximum slope from i; j is visible iff its
// slope strictly exceeds that maximum. Slopes are compared by cross
// multiplication so integer-valued series are handled exactly. The scan stops
// once the steepest sight line already clears every remaining value.
template <class OnEdge>
void sweep_natural(std::span<const double> y, OnEdge&& on_edge) {
    const std::size_t n = y.size();
    std::vector<double> suffix_max(n + 1, -HUGE_VAL);
    for (std::size_t k = n; k-- > 0;) suffix_max[k] = std::max(y[k], suffix_max[k + 1]);

    for (std::size_t i = 0; i + 1 < n; ++i) {
        on_edge(i, i + 1);
        std::size_t best = i + 1;
        for (std::size_t j = i + 2; j < n; ++j) {
            const double run_best = static_cast<double>(best - i);
            const double run_j = static_cast<double>(j - i);
            if ((y[j] - y[i]) * run_best > (y[best] - y[i]) * run_j) {
                on_edge(i, j);
                best = j;
            }
            if (j + 1 < n && y[best] >= y[i]) {
                const double run_next = static_cast<double>(j + 1 - i);
                const double run_b = static_cast<double>(best - i);
                if ((y[best] - y[i]) * run_next >= (suffix_max[j + 1] - y[i]) * run_b) break;
            }
        }
    }
}

template <class OnEdge>
void sweep_horizontal(std::span<const double> y, OnEdge&& on_edge) {
    const std::size_t n = y.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        on_edge(i, i + 1);
        double running_max = y[i + 1];
        for (std::size_t j = i + 2; j < n && running_max < y[i]; ++j) {
            if (running_max < y[j]) on_edge(i, j);
            running_max = std::max(running_max, y[j]);
        }
    }
}

}  // namespace detail

inline VisibilityGraph build_nvg(const Series& s) {
    VisibilityGraph g(s.size(), GraphKind::natural);
    detail::sweep_natural(s.values(), [&](std::size_t i, std::size_t j) { g.add_edge(i, j, 1.0); });
    return g;
}

inline VisibilityGraph build_hvg(const Series& s) {
    VisibilityGraph g(s.size(), GraphKind::horizontal);
    detail::sweep_horizontal(s.values(), [&](std::size_t i, std::size_t j) { g.add_edge(i, j, 1.0); });
    return g;
}

// Same edges as build_nvg; each edge carries the angle of its sight line,
// atan((y_j - y_i) / (j - i)) for i < j.
inline VisibilityGraph build_wvg(const Series& s) {
    VisibilityGraph g(s.size(), GraphKind::weighted);
    const auto y = s.values();
    detail::sweep_natural(y, [&](std::size_t i, std::size_t j) {
        g.add_edge(i, j, std::atan((y[j] - y[i]) / static_cast<double>(j - i)));
    });
    return g;
}

inline VisibilityGraph build_graph(const Series& s, GraphKind kind) {
    switch (kind) {
    case GraphKind::natural: return build_nvg(s);
    case GraphKind::horizontal: return build_hvg(s);
    case GraphKind::weighted: return build_wvg(s);
    }
    fail(ErrorKind::invalid_argument, "unknown graph kind");
}

}  // namespace visgraph

#endif  // VISGRAPH_VISIBILITY_GRAPH_HPP
