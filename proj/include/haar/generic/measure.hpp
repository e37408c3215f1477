#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "haar/errors.hpp"
#include "haar/exactreal/certified.hpp"
#include "haar/generic/located_set.hpp"
#include "haar/packing/packing.hpp"

namespace haar {

struct MeasureOptions {
    /// Largest packing index compute_measure may reach before giving up.
    std::int64_t max_index = 200;
    /// Working precision cap when a distance enclosure is too wide.
    std::int64_t point_precision_cap = 4096;
    /// Use the arithmetic counting path for circle progressions.
    bool fast_path = true;
};

namespace detail {

// Number of k in [0, kappa) with k * step in the open interval (lo, hi).
inline void count_progression(const Dyadic& step, std::int64_t kappa, const Dyadic& lo, const Dyadic& hi,
                                std::vector<std::pair<BigInt, BigInt>>& ranges) {
    BigInt kmin = Dyadic::div_floor(lo, step, 0).floor_int() + 1;
    BigInt kmax = Dyadic::div_ceil(hi, step, 0).ceil_int() - 1;
    kmin = std::max(kmin, BigInt(0));
    kmax = std::min(kmax, BigInt(kappa - 1));
    if (kmin <= kmax) ranges.emplace_back(kmin, kmax);
}

// Counts progression points p with d(p, S) < t for an arc set S (t < 1/2).
inline std::int64_t count_near_arcs(const ArcSet& s, const Packing& pk, const Dyadic& t) {
    if (s.empty()) return 0;
    if (pk.kappa == 1) return arcs_distance(s, Dyadic(0)) < t ? 1 : 0;
    const Dyadic& step = *pk.step;
    std::vector<std::pair<BigInt, BigInt>> ranges;
    for (const auto& [lo, hi] : to_arcs(s.pieces)) {
        if (Dyadic(1) <= hi - lo + t.ldexp(1)) return pk.kappa;
        // (lo - t, hi + t) modulo 1, intersected with [0, 1).
        for (int j = -1; j <= 1; ++j) {
            const Dyadic a = lo - t + Dyadic(j), b = hi + t + Dyadic(j);
            if (b <= Dyadic(0) || Dyadic(1) <= a) continue;
            count_progression(step, pk.kappa, a, b, ranges);
        }
    }
    std::sort(ranges.begin(), ranges.end());
    BigInt total = 0, cur_lo = -1, cur_hi = -2;
    for (const auto& [a, b] : ranges) {
        if (a > cur_hi + 1) {
            if (cur_hi >= cur_lo) total += cur_hi - cur_lo + 1;
            cur_lo = a;
            cur_hi = b;
        } else {
            cur_hi = std::max(cur_hi, b);
        }
    }
    if (cur_hi >= cur_lo) total += cur_hi - cur_lo + 1;
    return static_cast<std::int64_t>(total);
}

}  // namespace detail

/// A count over a finite point set, i.e. the rational count / total.
struct CountRatio {
    std::int64_t count = 0;
    std::int64_t total = 1;

    friend bool operator==(const CountRatio& x, const CountRatio& y) {
        return BigInt(x.count) * y.total == BigInt(y.count) * x.total;
    }
};

/// q = count / |T| with every point of S counted and no point outside
/// B_{2^-n}(S) counted: p is counted when an approximation of d(p, S) to
/// within 2^-(n+2) is below 2^-(n+1).
inline CountRatio pseudo_count(const LocatedSet& s, const Packing& pk, std::int64_t n, const MeasureOptions& opt = {}) {
    if (pk.kappa <= 0) throw InvalidArgument("empty point set");
    const Dyadic threshold = Dyadic::pow2(-(n + 1));
    const auto* arcs = std::get_if<ArcSet>(&s.geometry());
    if (opt.fast_path && arcs && pk.step && threshold < Dyadic::pow2(-1))
        return {detail::count_near_arcs(*arcs, pk, threshold), pk.kappa};
    const Dyadic tol = Dyadic::pow2(-(n + 2));
    std::int64_t count = 0;
    for (std::size_t i = 0; i < pk.size(); ++i) {
        const Element p = pk.element(i);
        Interval d = s.dist(p, n + 4);
        for (std::int64_t prec = n + 8; tol < d.width() && prec <= opt.point_precision_cap; prec *= 2)
            d = s.dist(p, prec);
        // Beyond the cap only an enclosure below 2^-n is trusted.
        const bool counted = d.width() <= tol ? d.mid() < threshold : d.hi() <= Dyadic::pow2(-n);
        if (counted) ++count;
    }
    return {count, pk.kappa};
}

/// The measure of a closed, located, co-inner regular set U to within 2^-n.
///
/// For m = 0, 1, ...: a counts T_m against B_{-(2^(-m+1) + 2^(-m-1))}(U) and b
/// against B_{2^(-m+1)}(U), both at parameter m + 1. Thickening by the
/// 2^-(m+1) slack of pseudo_count keeps a <= mu_T(B_{-2^(-m+1)}(U)) <= mu(U)
/// and mu(U) <= mu_T(B_{2^(-m+1)}(U)) <= b, so [a, b] brackets mu(U).
inline CertifiedValue compute_measure(const LocatedSet& u, const PackingTable& table, std::int64_t n,
                                      const MeasureOptions& opt = {}) {
    for (std::int64_t m = 0; m <= opt.max_index; ++m) {
        if (!table.has(m))
            throw PackingExhausted("compute_measure needs T_" + std::to_string(m) + " beyond the table");
        const Packing& pk = table.at(m);
        const Dyadic r_in = Dyadic::pow2(-m + 1) + Dyadic::pow2(-m - 1);
        const Dyadic r_out = Dyadic::pow2(-m + 1);
        const std::int64_t ca = pseudo_count(u.inner(r_in), pk, m + 1, opt).count;
        const std::int64_t cb = pseudo_count(u.outer(r_out), pk, m + 1, opt).count;
        const std::int64_t k = pk.kappa;
        // b - a <= 2^-n, tested exactly: (cb - ca) / k <= 2^-n.
        if (Dyadic(cb - ca).ldexp(n) <= Dyadic(k)) {
            // Midpoint (ca + cb) / (2k), rounded to 2^-(n+2); the rounding
            // keeps the total error below 2^-n.
            const Dyadic mid = Dyadic::div_floor(Dyadic(ca + cb), Dyadic(2 * k), n + 2);
            return {mid, -n};
        }
    }
    throw NoConvergence("compute_measure did not reach 2^-" + std::to_string(n) + " by T_" +
                        std::to_string(opt.max_index) + " (set not co-inner regular?)");
}

/// Nested radius intervals converging to a co-inner regular radius in (a, b).
///
/// Step n splits (a_{n-1}, b_{n-1}) at tenths r1, r5, r9 (with the tenth
/// eps rounded down to a dyadic), compares pseudo counts of the balls
/// around dense(0), and keeps [r1 + eps, r5 - eps] or [r5 + eps, r9 - eps].
/// Step 0 returns the inner 8/10 without measure tests.
inline std::pair<Dyadic, Dyadic> find_coinner_radius(const std::shared_ptr<const Group>& g, const Dyadic& a,
                                                     const Dyadic& b, const PackingTable& table, std::int64_t n,
                                                     const MeasureOptions& opt = {}) {
    if (!(Dyadic(0) < a && a < b)) throw InvalidArgument("need 0 < a < b");
    auto tenth = [](const Dyadic& w) {
        return Dyadic::div_floor(w, Dyadic(10), std::max<std::int64_t>(0, -w.msb()) + 8);
    };
    Dyadic lo = a, hi = b;
    {
        const Dyadic e = tenth(hi - lo);
        lo = lo + e;
        hi = hi - e;
    }
    const Element p = g->dense(0);
    for (std::int64_t k = 1; k <= n; ++k) {
        const Dyadic eps = tenth(hi - lo);
        const Dyadic r1 = lo + eps, r5 = lo + eps * Dyadic(5), r9 = hi - eps;
        std::int64_t big_n = 0;
        while (eps < Dyadic::pow2(-big_n + 2)) ++big_n;
        if (!table.has(big_n))
            throw PackingExhausted("find_coinner_radius needs T_" + std::to_string(big_n) + " beyond the table");
        const Packing& pk = table.at(big_n);
        const auto m1 = pseudo_count(LocatedSet::ball(g, p, r1), pk, big_n, opt).count;
        const auto m5 = pseudo_count(LocatedSet::ball(g, p, r5), pk, big_n, opt).count;
        const auto m9 = pseudo_count(LocatedSet::ball(g, p, r9), pk, big_n, opt).count;
        if (m9 - m5 <= m5 - m1) {
            hi = r5 - eps;
            lo = r1 + eps;
        } else {
            lo = r5 + eps;
            hi = r9 - eps;
        }
    }
    return {lo, hi};
}

}  // namespace haar
