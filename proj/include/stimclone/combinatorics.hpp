// combinatorics.hpp -- exact binomial / multinomial helpers shared by the
// ladder construction, symmetric-state normalization, and closed-form checks.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace stimclone::comb {

// ---------------------------------------------------------------------------
// binomial_u64: exact C(n, k) in unsigned 64-bit arithmetic.
//
// Multiplies one factor of (n-k+j) at a time and divides by j immediately;
// every intermediate is an exact binomial times an integer, so the division
// is exact.  Throws on overflow instead of silently wrapping.
// ---------------------------------------------------------------------------
inline std::uint64_t binomial_u64(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("binomial_u64: negative argument");
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t result = 1;
    for (int j = 1; j <= k; ++j) {
        const std::uint64_t factor = static_cast<std::uint64_t>(n - k + j);
        if (result > std::numeric_limits<std::uint64_t>::max() / factor)
            throw std::overflow_error("binomial_u64: C(" + std::to_string(n) + "," +
                                      std::to_string(k) + ") overflows 64 bits");
        result = result * factor / static_cast<std::uint64_t>(j);
    }
    return result;
}

// ---------------------------------------------------------------------------
// binomial: C(n, k) as double.  Uses the exact integer path when it fits and
// a stable product of ratios otherwise.
// ---------------------------------------------------------------------------
inline double binomial(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("binomial: negative argument");
    if (k > n) return 0.0;
    if (k > n - k) k = n - k;
    if (n <= 62) return static_cast<double>(binomial_u64(n, k));
    double result = 1.0;
    for (int j = 1; j <= k; ++j)
        result *= static_cast<double>(n - k + j) / static_cast<double>(j);
    return result;
}

// ---------------------------------------------------------------------------
// multinomial_u64: exact N! / (i! j! k!) for a three-way split i+j+k = N.
// Computed as C(N, i) * C(N-i, j), both exact.
// ---------------------------------------------------------------------------
inline std::uint64_t multinomial_u64(int i, int j, int k) {
    if (i < 0 || j < 0 || k < 0) throw std::invalid_argument("multinomial_u64: negative count");
    const int n = i + j + k;
    const std::uint64_t a = binomial_u64(n, i);
    const std::uint64_t b = binomial_u64(n - i, j);
    if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
        throw std::overflow_error("multinomial_u64: overflow");
    return a * b;
}

} // namespace stimclone::comb
