#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "haar/errors.hpp"
#include "haar/group/group.hpp"
#include "haar/group/instances.hpp"

namespace haar {

/// Exact kappa(n): the size of a maximum 2^-n packing.
inline std::int64_t packing_size(const Group& g, std::int64_t n) {
    if (!g.has_kappa()) throw KappaUnavailable("no closed-form packing size for " + g.name);
    return g.kappa(n);
}

/// True iff every pair of points has a distance enclosure whose lower end
/// exceeds delta. Points on the circle are checked through their cyclic
/// gaps, which suffices because every circle distance is a sum of gaps.
inline bool certify_separated(const Group& g, const std::vector<Element>& pts, const Dyadic& delta,
                              std::int64_t p = 64) {
    if (pts.size() < 2) return true;
    if (g.kind == GroupKind::circle) {
        std::vector<Dyadic> xs;
        xs.reserve(pts.size());
        for (const auto& e : pts) xs.push_back(e.as<TorusPoint>().coords[0]);
        std::sort(xs.begin(), xs.end());
        for (std::size_t i = 0; i + 1 < xs.size(); ++i)
            if (xs[i + 1] - xs[i] <= delta) return false;
        return delta < Dyadic(1) - (xs.back() - xs.front());
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (g.metric(pts[i], pts[j], p).lo() <= delta) return false;
    return true;
}

namespace detail {

// Depth-first search for `target` pairwise delta-separated points among
// `cand`, in enumeration order. `effort` counts distance evaluations.
struct SeparatedSearch {
    const Group& g;
    const std::vector<Element>& cand;
    Dyadic delta;
    std::int64_t p;
    std::size_t target;
    std::int64_t& effort;
    std::vector<std::size_t> chosen;
    std::map<std::pair<std::size_t, std::size_t>, bool> memo;

    bool sep(std::size_t i, std::size_t j) {
        const auto key = std::make_pair(std::min(i, j), std::max(i, j));
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        if (--effort < 0) throw EffortExceeded("separated-set search exceeded its effort cap");
        const bool ok = delta < g.metric(cand[i], cand[j], p).lo();
        memo.emplace(key, ok);
        return ok;
    }

    bool run(std::size_t from) {
        if (chosen.size() == target) return true;
        for (std::size_t i = from; i + (target - chosen.size()) <= cand.size(); ++i) {
            bool ok = true;
            for (std::size_t c : chosen)
                if (!sep(c, i)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(i);
            if (run(i + 1)) return true;
            chosen.pop_back();
        }
        return false;
    }
};

inline std::vector<Element> dense_prefix(const Group& g, std::size_t len) {
    std::vector<Element> v;
    v.reserve(len);
    for (std::size_t i = 0; i < len; ++i) v.push_back(g.dense(i));
    return v;
}

}  // namespace detail

struct PackingOptions {
    /// Budget of distance evaluations for the dovetailed search.
    std::int64_t effort = 2'000'000;
    /// Disable instance seeds and force the dovetailed search.
    bool generic_only = false;
};

/// A maximum 2^-n packing of size kappa_n drawn from the dense sequence.
///
/// Instance seeds are tried first and accepted only through the separation
/// certificate. Otherwise candidate kappa_n-tuples over growing prefixes of
/// the dense sequence are searched, interleaved with growing working
/// precision; the first tuple found in enumeration order is returned.
inline std::vector<Element> max_packing(const Group& g, std::int64_t n, std::int64_t kappa_n,
                                        const PackingOptions& opt = {}) {
    if (kappa_n < 1) throw InvalidArgument("packing size must be positive");
    const Dyadic delta = Dyadic::pow2(-n);
    if (g.separated_seed && !opt.generic_only) {
        auto seed = g.separated_seed(delta);
        if (seed.size() >= static_cast<std::size_t>(kappa_n)) {
            seed.resize(static_cast<std::size_t>(kappa_n));
            if (certify_separated(g, seed, delta)) return seed;
        }
    }
    std::int64_t effort = opt.effort;
    for (std::size_t len = static_cast<std::size_t>(kappa_n), round = 0;; len *= 2, ++round) {
        const auto cand = detail::dense_prefix(g, len);
        const std::int64_t p = std::max<std::int64_t>(n, 0) + 8 + 16 * static_cast<std::int64_t>(round);
        detail::SeparatedSearch s{g, cand, delta, p, static_cast<std::size_t>(kappa_n), effort, {}, {}};
        if (s.run(0)) {
            std::vector<Element> out;
            for (std::size_t i : s.chosen) out.push_back(cand[i]);
            return out;
        }
    }
}

struct PackingBracket {
    std::int64_t lower = 1;
    std::int64_t upper = 1;
    /// Set when the effort cap stopped the lower-bound search early.
    bool exhausted = false;
};

/// lower <= (size of the largest delta-separated set) <= upper.
///
/// The lower bound comes from exhibited separated tuples (instance seeds,
/// then greedy and depth-first search over the dense sequence); the upper
/// bound from the instance's explicit delta/2 net, each of whose balls holds
/// at most one point of a delta-separated set.
inline PackingBracket packing_size_bracket(const Group& g, const Dyadic& delta, std::int64_t effort) {
    if (delta.sign() <= 0) throw InvalidArgument("radius must be positive");
    if (!g.separation_upper) throw Unsupported("no explicit net for " + g.name);
    PackingBracket b;
    b.upper = g.separation_upper(delta);
    if (g.separated_seed) {
        try {
            auto seed = g.separated_seed(delta);
            if (certify_separated(g, seed, delta))
                b.lower = std::max<std::int64_t>(b.lower, static_cast<std::int64_t>(seed.size()));
        } catch (const EffortExceeded&) {
            b.exhausted = true;
        }
    }
    if (b.lower >= b.upper) return b;
    // Greedy pass, then try to beat it by one with a bounded search.
    std::int64_t budget = effort;
    try {
        const std::size_t len = static_cast<std::size_t>(std::min<std::int64_t>(std::max<std::int64_t>(64, 4 * b.upper), 4096));
        const auto cand = detail::dense_prefix(g, len);
        const std::int64_t p = 24 + std::max<std::int64_t>(0, -delta.msb());
        std::vector<Element> chosen;
        for (const auto& c : cand) {
            bool ok = true;
            for (const auto& e : chosen) {
                if (--budget < 0) throw EffortExceeded("bracket search exceeded its effort cap");
                if (!(delta < g.metric(c, e, p).lo())) {
                    ok = false;
                    break;
                }
            }
            if (ok) chosen.push_back(c);
        }
        b.lower = std::max<std::int64_t>(b.lower, static_cast<std::int64_t>(chosen.size()));
        while (b.lower < b.upper) {
            detail::SeparatedSearch s{g, cand, delta, p, static_cast<std::size_t>(b.lower + 1), budget, {}, {}};
            if (!s.run(0)) break;
            b.lower += 1;
        }
    } catch (const EffortExceeded&) {
        b.exhausted = true;
    }
    return b;
}

/// One maximum packing T_n. Circle packings built from instance seeds are
/// arithmetic progressions k * step and are kept in that form; the points
/// are materialized only for small tables.
struct Packing {
    std::int64_t n = 0;
    std::int64_t kappa = 0;
    std::vector<Element> points;
    std::optional<Dyadic> step;

    std::size_t size() const { return static_cast<std::size_t>(kappa); }
    Element element(std::size_t i) const {
        if (!points.empty()) return points[i];
        return circle_point(*step * Dyadic(static_cast<long long>(i)));
    }
    std::vector<Element> materialize() const {
        if (!points.empty()) return points;
        std::vector<Element> v;
        v.reserve(size());
        for (std::size_t i = 0; i < size(); ++i) v.push_back(element(i));
        return v;
    }
};

/// The sequence {T_m} of maximum packings, m = 0 .. max_index. For finite
/// groups the sequence is constant from m = 1 on and any index is served.
class PackingTable {
public:
    static PackingTable build(const Group& g, std::int64_t max_index, const PackingOptions& opt = {}) {
        PackingTable t;
        t.max_index_ = max_index;
        t.stationary_ = g.is_finite();
        const std::int64_t top = t.stationary_ ? std::min<std::int64_t>(max_index, 1) : max_index;
        for (std::int64_t m = 0; m <= top; ++m) t.entries_.emplace(m, make_entry(g, m, opt));
        return t;
    }

    std::int64_t max_index() const { return stationary_ ? std::numeric_limits<std::int64_t>::max() : max_index_; }
    bool has(std::int64_t m) const { return m >= 0 && m <= max_index(); }

    const Packing& at(std::int64_t m) const {
        if (m < 0) throw InvalidArgument("negative packing index");
        if (stationary_ && m > 1) return entries_.at(1);
        auto it = entries_.find(m);
        if (it == entries_.end())
            throw PackingExhausted("packing T_" + std::to_string(m) + " is beyond the table (max index " +
                                   std::to_string(max_index_) + ")");
        return it->second;
    }

    std::vector<std::int64_t> radii_exponents() const {
        std::vector<std::int64_t> v;
        for (const auto& [m, _] : entries_) v.push_back(m);
        return v;
    }

private:
    static Packing make_entry(const Group& g, std::int64_t m, const PackingOptions& opt) {
        Packing pk;
        pk.n = m;
        pk.kappa = packing_size(g, m);
        const Dyadic delta = Dyadic::pow2(-m);
        if (g.kind == GroupKind::circle && !opt.generic_only) {
            const Dyadic step = circle_separated_step(delta);
            // k * step for k < kappa: consecutive gaps are `step`, the wrap gap
            // is 1 - (kappa - 1) step; both must exceed delta.
            if (pk.kappa == 1 || (delta < step && delta < Dyadic(1) - step * Dyadic(pk.kappa - 1))) {
                pk.step = pk.kappa == 1 ? Dyadic(0) : step;
                if (pk.kappa <= 4096) pk.points = pk.materialize();
                return pk;
            }
        }
        pk.points = max_packing(g, m, pk.kappa, opt);
        return pk;
    }

    std::map<std::int64_t, Packing> entries_;
    std::int64_t max_index_ = 0;
    bool stationary_ = false;
};

/// `n kappa` followed by one line per point.
inline void write_packing(std::ostream& os, const Packing& pk) {
    os << pk.n << ' ' << pk.kappa << '\n';
    for (std::size_t i = 0; i < pk.size(); ++i) os << pk.element(i) << '\n';
}

}  // namespace haar
