#ifndef VISGRAPH_VERIFY_HPP
#define VISGRAPH_VERIFY_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "visgraph/number_theory.hpp"
#include "visgraph/oracle.hpp"
#include "visgraph/synth.hpp"
#include "visgraph/visibility_graph.hpp"

// Exact checks of the fractal-series degree laws, run by `visgraph verify`.
namespace visgraph::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

template <class F>
CheckResult timed(std::string name, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r{std::move(name), false, {}, 0.0};
    body(r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace detail

// sum_{d | n} deg(d) == 2^n for n = 1..max_n, deg by Moebius inversion.
inline CheckResult divisor_sum_identity(std::uint64_t max_n = 24) {
    return detail::timed("divisor-sum identity n=1.." + std::to_string(max_n), [&](CheckResult& r) {
        std::uint64_t failures = 0;
        for (std::uint64_t n = 1; n <= max_n; ++n)
            if (!numth::check_divisor_sum(n)) ++failures;
        r.passed = failures == 0;
        r.detail = std::to_string(failures) + " failures";
    });
}

inline CheckResult left_recursion_closed_form(std::uint64_t max_n = 40) {
    return detail::timed("left-degree recursion = closed form n<=" + std::to_string(max_n), [&](CheckResult& r) {
        std::uint64_t failures = 0;
        for (std::uint64_t k0 = 1; k0 <= 3; ++k0) {
            numth::BigInt prev = k0;
            for (std::uint64_t n = 0; n <= max_n; ++n) {
                const numth::BigInt k = numth::k_left(n, k0);
                if (k != numth::k_left_closed_form(n, k0)) ++failures;
                if (n > 0 && k != 2 * prev + 1) ++failures;
                prev = k;
            }
        }
        r.passed = failures == 0;
        r.detail = std::to_string(failures) + " mismatches";
    });
}

// log2(K_l(n)) / n for K_l(0) = 1 lies within [0.95, 1.05].
inline CheckResult left_leading_term(std::uint64_t n = 20) {
    return detail::timed("left-degree leading term 2^n at n=" + std::to_string(n), [&](CheckResult& r) {
        const double k = numth::k_left(n, 1).convert_to<double>();
        const double ratio = std::log2(k) / static_cast<double>(n);
        r.passed = ratio >= 0.95 && ratio <= 1.05;
        std::ostringstream os;
        os.precision(10);
        os << "log2(K_l(" << n << "))/" << n << " = " << ratio;
        r.detail = os.str();
    });
}

// Left degree of the (2, 1/3) node on brute-force NVGs of the fractal series
// at depth 0..max_depth; K_l(0) is measured, then K(p) = 2 K(p-1) + 1 and the
// shipped construction must agree with the brute-force one.
inline CheckResult fractal_left_degree(int max_depth = 4) {
    return detail::timed("fractal NVG left degree follows K(p)=2K(p-1)+1, depths 1.." + std::to_string(max_depth),
                         [&](CheckResult& r) {
                             std::vector<std::size_t> measured;
                             bool agree = true;
                             for (int depth = 0; depth <= max_depth; ++depth) {
                                 const auto fs = synth::synth_fractal({depth});
                                 const auto brute = oracle::natural_edges(fs.series.values());
                                 measured.push_back(oracle::left_degree(brute, fs.anchor));
                                 agree = agree && build_nvg(fs.series).edge_set() == brute;
                             }
                             bool recursion = true;
                             for (std::size_t p = 1; p < measured.size(); ++p)
                                 recursion = recursion && numth::BigInt(measured[p]) ==
                                                              numth::k_left(p, numth::BigInt(measured[0]));
                             r.passed = recursion && agree;
                             std::ostringstream os;
                             os << "K_l =";
                             for (auto k : measured) os << ' ' << k;
                             if (!agree) os << " (sweep disagrees with brute force)";
                             r.detail = os.str();
                         });
}

inline std::vector<CheckResult> run_all() {
    return {divisor_sum_identity(), left_recursion_closed_form(), left_leading_term(), fractal_left_degree()};
}

}  // namespace visgraph::verify

#endif  // VISGRAPH_VERIFY_HPP
