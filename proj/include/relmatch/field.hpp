#pragma once

#include <cstdint>

namespace relmatch::field {

/// Prime field for all fingerprints: the Mersenne prime 2^61 - 1.
/// Intermediate products fit unsigned 128-bit arithmetic and the
/// reduction is two shifts, so the hot path stays branch-light.
inline constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    if (s >= kPrime) s -= kPrime;
    return s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) {
    return a >= b ? a - b : a + kPrime - b;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 prod =
        static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
    std::uint64_t lo = static_cast<std::uint64_t>(prod & kPrime);
    std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
    std::uint64_t s = lo + hi;
    if (s >= kPrime) s -= kPrime;
    return s;
}

inline std::uint64_t pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t result = 1;
    std::uint64_t b = base % kPrime;
    while (exp > 0) {
        if (exp & 1) result = mul(result, b);
        b = mul(b, b);
        exp >>= 1;
    }
    return result;
}

} // namespace relmatch::field
