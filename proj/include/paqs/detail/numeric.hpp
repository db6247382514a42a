#pragma once

#include <cstdint>

#include "paqs/errors.hpp"

namespace paqs::detail {

// x^k by repeated multiplication; k small and nonnegative. ipow(0, 0) == 1.
inline double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

// Exact up to 20! (fits in 64 bits).
inline std::uint64_t factorial_u64(int n) {
    if (n < 0 || n > 20) throw OrderTooLarge("factorial_u64: n out of [0, 20]");
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
}

inline std::uint64_t binomial_u64(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

// Coefficient (m!)^2 / ((m-p)! (p!)^2) of the a^m a^dag^m reordering sum,
// computed as C(m,p) * m!/p! in exact integer arithmetic.
inline std::uint64_t reorder_coeff_u64(int m, int p) {
    std::uint64_t falling = 1;
    for (int i = p + 1; i <= m; ++i) falling *= static_cast<std::uint64_t>(i);
    return binomial_u64(m, p) * falling;
}

} // namespace paqs::detail
