#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>

#include "haar/errors.hpp"
#include "haar/exactreal/certified.hpp"
#include "haar/exactreal/interval.hpp"

namespace haar {

struct RefineOptions {
    int max_iterations = 100;
    // Working precision is never raised past this many bits.
    std::int64_t max_precision = std::int64_t{1} << 16;
};

/// Re-runs `computation` at doubling working precision, starting from
/// max(n + 4, 16), until the returned interval has width <= 2^-n; the
/// midpoint of that interval is returned.
inline CertifiedValue refine(const std::function<Interval(std::int64_t)>& computation, std::int64_t n,
                             const RefineOptions& opt = {}) {
    const Dyadic target = Dyadic::pow2(-n);
    std::int64_t p = std::max<std::int64_t>(n + 4, 16);
    for (int it = 0; it < opt.max_iterations && p <= opt.max_precision; ++it, p *= 2) {
        const Interval r = computation(p);
        if (r.width() <= target) return {r.mid(), -n};
    }
    throw NoConvergence("no enclosure of width 2^-" + std::to_string(n) + " within the effort cap");
}

}  // namespace haar
