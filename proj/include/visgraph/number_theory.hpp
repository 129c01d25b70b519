#ifndef VISGRAPH_NUMBER_THEORY_HPP
#define VISGRAPH_NUMBER_THEORY_HPP

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "visgraph/error.hpp"

// Exact arithmetic for the degree laws of visibility graphs built on the
// self-similar fractal series: divisor sums, Moebius inversion and the left
// degree recursion.
namespace visgraph::numth {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    if (n == 0) fail(ErrorKind::invalid_argument, "divisors of 0 are undefined");
    std::vector<std::uint64_t> low, high;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        low.push_back(d);
        if (d != n / d) high.push_back(n / d);
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
}

// Moebius function: 0 if n has a squared prime factor, else (-1)^(prime count).
inline int mobius(std::uint64_t n) {
    if (n == 0) fail(ErrorKind::invalid_argument, "mobius(0) is undefined");
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

inline BigInt pow2(std::uint64_t e) {
    BigInt v = 1;
    v <<= static_cast<unsigned>(e);
    return v;
}

// deg(n) = sum_{d | n} mu(d) 2^{n/d}
inline BigInt deg_arith(std::uint64_t n) {
    if (n == 0) fail(ErrorKind::invalid_argument, "deg_arith needs n >= 1");
    BigInt sum = 0;
    for (std::uint64_t d : divisors(n)) {
        const int mu = mobius(d);
        if (mu == 0) continue;
        if (mu > 0)
            sum += pow2(n / d);
        else
            sum -= pow2(n / d);
    }
    return sum;
}

// True iff sum_{d | n} deg(d) == 2^n exactly.
inline bool check_divisor_sum(std::uint64_t n) {
    if (n == 0) fail(ErrorKind::invalid_argument, "check_divisor_sum needs n >= 1");
    BigInt sum = 0;
    for (std::uint64_t d : divisors(n)) sum += deg_arith(d);
    return sum == pow2(n);
}

enum class RightDegreeMode {
    as_written,  // sum_{k=1..n} (1/n) deg(n); the inner sum ignores k
    per_step     // sum_{k=1..n} (1/k) deg(k)
};

inline Rational k_right(std::uint64_t n, RightDegreeMode mode) {
    if (n == 0) fail(ErrorKind::invalid_argument, "k_right needs n >= 1");
    Rational total(0);
    for (std::uint64_t k = 1; k <= n; ++k) {
        const std::uint64_t m = mode == RightDegreeMode::as_written ? n : k;
        total += Rational(deg_arith(m), BigInt(m));
    }
    return total;
}

// K_l(0) = k0, K_l(n) = 2 K_l(n-1) + 1.
inline BigInt k_left(std::uint64_t n, const BigInt& k0) {
    BigInt k = k0;
    for (std::uint64_t step = 0; step < n; ++step) k = 2 * k + 1;
    return k;
}

// (k0 + 1) 2^n - 1
inline BigInt k_left_closed_form(std::uint64_t n, const BigInt& k0) {
    return (k0 + 1) * pow2(n) - 1;
}

}  // namespace visgraph::numth

#endif  // VISGRAPH_NUMBER_THEORY_HPP
