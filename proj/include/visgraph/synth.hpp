#ifndef VISGRAPH_SYNTH_HPP
#define VISGRAPH_SYNTH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "visgraph/error.hpp"
#include "visgraph/random.hpp"
#include "visgraph/visibility_graph.hpp"

// Synthetic series generators: periodic, i.i.d. uniform and the self-similar
// fractal series whose visibility-graph degrees follow exact arithmetic laws.
namespace visgraph::synth {

enum class FractalPlacement { deterministic_mid, seeded_random };

inline std::string_view to_string(FractalPlacement p) {
    return p == FractalPlacement::deterministic_mid ? "deterministic-mid" : "seeded-random";
}

struct FractalSeriesSpec {
    int depth = 0;
    FractalPlacement placement = FractalPlacement::deterministic_mid;
    std::uint64_t seed = 0;
    std::size_t max_points = std::size_t{1} << 22;
};

struct FractalSeries {
    Series series;              // integer heights, ordered by x
    std::vector<double> x;      // original abscissae
    std::vector<double> y;      // original heights 1, 1/3, 3^{-(p+1)}
    std::size_t anchor = 0;     // index of the point at (2, 1/3)
    double height_scale = 1.0;  // series[i] == y[i] * height_scale
    FractalSeriesSpec spec;
};

inline std::size_t fractal_point_count(int depth) {
    return (std::size_t{1} << (depth + 2)) - 1;  // 3 + sum_{p=1..depth} 2^{p+1}
}

// Starts from (0, 1), (1, 1/3), (2, 1/3). Step p adds 2^{p+1} points of height
// 3^{-(p+1)}: a run of 3 * 2^{p-1} in the gap just left of (2, 1/3), and a run
// of 2^{p-1} in the gap just left of (1, 1/3). Runs are centred on the gap
// midpoint with spacing min(3^{-p}, gap / count) (deterministic-mid), or drawn
// uniformly inside the same gap (seeded-random).
//
// Every point right of (1, 1/3) stays visible from (2, 1/3) and every point
// left of it is hidden, so the left degree of (2, 1/3) obeys
// K(p) = 2 K(p - 1) + 1.
//
// Heights are emitted scaled by 3^{depth+1} so that all values are exact
// integers; visibility is invariant under that scaling.
inline FractalSeries synth_fractal(const FractalSeriesSpec& spec) {
    if (spec.depth < 0) fail(ErrorKind::invalid_argument, "fractal depth must be >= 0");
    if (spec.depth > 30 || fractal_point_count(spec.depth) > spec.max_points)
        fail(ErrorKind::resource, "fractal depth " + std::to_string(spec.depth) + " exceeds the point budget of " +
                                      std::to_string(spec.max_points));

    // Points are kept in x order by construction: A, hidden runs (step 1, 2, ...), C,
    // visible runs (step 1, 2, ...), B.
    std::vector<double> hidden_x, hidden_y, visible_x, visible_y;
    Rng rng(spec.seed);
    double hidden_lo = 0.0;   // rightmost point left of x = 1
    double visible_lo = 1.0;  // rightmost point left of x = 2

    auto place_run = [&](double lo, double hi, std::size_t count, double spacing, std::vector<double>& xs) {
        const std::size_t first = xs.size();
        if (spec.placement == FractalPlacement::deterministic_mid) {
            const double step = std::min(spacing, (hi - lo) / static_cast<double>(count));
            const double mid = 0.5 * (lo + hi);
            for (std::size_t t = 0; t < count; ++t)
                xs.push_back(mid + (static_cast<double>(t) - 0.5 * static_cast<double>(count - 1)) * step);
        } else {
            for (std::size_t t = 0; t < count; ++t) xs.push_back(rng.uniform(lo, hi));
            std::sort(xs.begin() + static_cast<std::ptrdiff_t>(first), xs.end());
        }
        return xs.back();
    };

    for (int p = 1; p <= spec.depth; ++p) {
        const double spacing = std::pow(3.0, -p);
        const double height = std::pow(3.0, -(p + 1));
        const std::size_t half = std::size_t{1} << (p - 1);
        visible_lo = place_run(visible_lo, 2.0, 3 * half, spacing, visible_x);
        visible_y.insert(visible_y.end(), 3 * half, height);
        hidden_lo = place_run(hidden_lo, 1.0, half, spacing, hidden_x);
        hidden_y.insert(hidden_y.end(), half, height);
    }

    FractalSeries out;
    out.spec = spec;
    out.x.reserve(fractal_point_count(spec.depth));
    out.y.reserve(fractal_point_count(spec.depth));
    out.x.push_back(0.0);
    out.y.push_back(1.0);
    out.x.insert(out.x.end(), hidden_x.begin(), hidden_x.end());
    out.y.insert(out.y.end(), hidden_y.begin(), hidden_y.end());
    out.x.push_back(1.0);
    out.y.push_back(1.0 / 3.0);
    out.x.insert(out.x.end(), visible_x.begin(), visible_x.end());
    out.y.insert(out.y.end(), visible_y.begin(), visible_y.end());
    out.x.push_back(2.0);
    out.y.push_back(1.0 / 3.0);
    out.anchor = out.x.size() - 1;

    // Integer heights: 3^{depth+1} for the first point, 3^{depth} for the two
    // base points at 1/3, 3^{depth-p} for step p.
    out.height_scale = std::pow(3.0, spec.depth + 1);
    std::vector<double> values;
    values.reserve(out.y.size());
    values.push_back(std::pow(3.0, spec.depth + 1));
    for (int p = 1; p <= spec.depth; ++p)
        values.insert(values.end(), std::size_t{1} << (p - 1), std::pow(3.0, spec.depth - p));
    values.push_back(std::pow(3.0, spec.depth));
    for (int p = 1; p <= spec.depth; ++p)
        values.insert(values.end(), 3 * (std::size_t{1} << (p - 1)), std::pow(3.0, spec.depth - p));
    values.push_back(std::pow(3.0, spec.depth));
    out.series = Series(std::move(values));
    return out;
}

// Number of neighbours of node `node` lying to its left.
inline std::size_t left_degree(const VisibilityGraph& g, std::size_t node) {
    std::size_t k = 0;
    for (const auto& nb : g.neighbors(node))
        if (nb.node < node) ++k;
    return k;
}

inline Series synth_periodic(std::size_t period, std::size_t repeats, const std::vector<double>& pattern) {
    if (pattern.empty()) fail(ErrorKind::invalid_argument, "periodic template must not be empty");
    if (pattern.size() != period)
        fail(ErrorKind::invalid_argument, "template length " + std::to_string(pattern.size()) +
                                              " does not match period " + std::to_string(period));
    if (repeats == 0) fail(ErrorKind::invalid_argument, "repeats must be >= 1");
    std::vector<double> values;
    values.reserve(period * repeats);
    for (std::size_t r = 0; r < repeats; ++r) values.insert(values.end(), pattern.begin(), pattern.end());
    return Series(std::move(values));
}

inline Series synth_random_uniform(std::size_t n, std::uint64_t seed) {
    if (n == 0) fail(ErrorKind::invalid_argument, "series length must be >= 1");
    Rng rng(seed);
    std::vector<double> values(n);
    for (auto& v : values) v = rng.uniform_open();
    return Series(std::move(values));
}

}  // namespace visgraph::synth

#endif  // VISGRAPH_SYNTH_HPP
