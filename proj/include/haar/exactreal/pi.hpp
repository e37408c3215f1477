#pragma once

#include <cstdint>
#include <map>
#include <mutex>

#include "haar/exactreal/interval.hpp"

namespace haar {

namespace detail {

// 2^q * atan(1/k) by the alternating series, in fixed point. Every floor
// division loses less than one unit, so the true value lies within
// `err` units of the returned integer.
inline BigInt atan_inv_fixed(unsigned k, std::int64_t q, BigInt& err) {
    const unsigned k2 = k * k;
    BigInt power = (BigInt(1) << static_cast<unsigned>(q)) / k;
    BigInt sum = 0;
    std::int64_t terms = 0;
    for (unsigned j = 0; !power.is_zero(); ++j, ++terms) {
        BigInt t = power / (2 * j + 1);
        if (j % 2 == 0)
            sum += t;
        else
            sum -= t;
        power /= k2;
    }
    err = BigInt(2 * terms + 2);
    return sum;
}

// Enclosure of pi of width about 2^-q, from Machin's formula
// pi = 16 atan(1/5) - 4 atan(1/239).
inline Interval pi_fixed(std::int64_t q) {
    const std::int64_t f = q + 32 + static_cast<std::int64_t>(boost::multiprecision::msb(BigInt(q + 2)));
    BigInt e5, e239;
    BigInt a5 = atan_inv_fixed(5, f, e5);
    BigInt a239 = atan_inv_fixed(239, f, e239);
    BigInt mid = 16 * a5 - 4 * a239;
    BigInt err = 16 * e5 + 4 * e239;
    return Interval(Dyadic(mid - err, -f), Dyadic(mid + err, -f)).round_out(q + 2);
}

}  // namespace detail

/// Enclosure of pi of width about 2^-q. Memoized per 64-bit bucket.
inline Interval pi_raw(std::int64_t q) {
    static std::mutex mu;
    static std::map<std::int64_t, Interval> cache;
    const std::int64_t bucket = ((std::max<std::int64_t>(q, 64) + 63) / 64) * 64;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(bucket); it != cache.end()) return it->second;
    }
    Interval v = detail::pi_fixed(bucket);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(bucket, v);
    return v;
}

/// The grid cell [floor, ceil] of pi on the grid 2^-(p+1): width 2^-(p+1),
/// and the enclosure at p+1 is always nested in the one at p.
inline Interval pi_enclosure(std::int64_t p) {
    for (std::int64_t q = p + 8;; q += 64) {
        const Interval e = pi_raw(q);
        const Dyadic lo = e.lo().floor_to(p + 1);
        if (lo == e.hi().floor_to(p + 1)) return {lo, lo + Dyadic::pow2(-(p + 1))};
    }
}

}  // namespace haar
