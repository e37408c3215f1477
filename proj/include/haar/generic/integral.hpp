#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "haar/errors.hpp"
#include "haar/exactreal/certified.hpp"
#include "haar/generic/partition.hpp"

namespace haar {

using GroupFunction = std::function<Interval(const Element&, std::int64_t)>;

/// m(k) with d(x, y) <= 2^-m(k) => |f(x) - f(y)| <= 2^-k.
struct ModulusOfContinuity {
    std::function<std::int64_t(std::int64_t)> eval;

    std::int64_t operator()(std::int64_t k) const { return eval(k); }

    /// For an L-Lipschitz function: m(k) = k + ceil(log2 L).
    static ModulusOfContinuity lipschitz(const Dyadic& l) {
        std::int64_t c = 0;
        if (l.sign() > 0)
            while (Dyadic::pow2(c) < l) ++c;
        return {[c, zero = l.sign() <= 0](std::int64_t k) { return zero ? std::int64_t{0} : k + c; }};
    }

    /// Every function on a discrete space: distance <= 1/2 means equality.
    static ModulusOfContinuity discrete() {
        return {[](std::int64_t) { return std::int64_t{1}; }};
    }
};

inline std::int64_t ceil_log2(const Dyadic& x) {
    std::int64_t c = 0;
    while (Dyadic::pow2(c) < x) ++c;
    return c;
}

struct IntegralOptions {
    PartitionOptions partition;
    /// f is evaluated to within 2^-(n + f_slack).
    std::int64_t f_slack = 4;
    std::int64_t f_precision_cap = 4096;
};

/// Enclosure of f(p) of width <= 2^-k, refining the working precision.
inline Interval evaluate_to(const GroupFunction& f, const Element& p, std::int64_t k, std::int64_t cap) {
    Interval v = f(p, k + 4);
    for (std::int64_t prec = k + 8; Dyadic::pow2(-k) < v.width(); prec *= 2) {
        if (prec > cap) throw NoConvergence("function enclosure does not reach width 2^-" + std::to_string(k));
        v = f(p, prec);
    }
    return v;
}

/// Haar integral of f to within 2^-n by a Riemann sum over a nice partition.
///
/// Cells come from the partition at m_f = modulus(n + 1), so f varies by at
/// most 2^-(n+1) on each. Every cell measure is computed to
/// 2^-(n + 2 + ceil(log2 N) + ceil(log2 max(M, 1))), so the N measure errors
/// weighted by |f| <= M add at most about 2^-(n+2), and f itself is evaluated
/// to 2^-(n+4).
inline CertifiedValue compute_integral(const std::shared_ptr<const Group>& g, const GroupFunction& f,
                                       const ModulusOfContinuity& modulus, const Dyadic& bound_m,
                                       const PackingTable& table, std::int64_t n, const IntegralOptions& opt = {}) {
    const std::int64_t mf = modulus(n + 1);
    const auto cells = find_nice_partition(g, table, mf, opt.partition);
    const std::int64_t logm = ceil_log2(max(bound_m, Dyadic(1)));
    const std::int64_t logn = ceil_log2(Dyadic(static_cast<long long>(cells.size())));
    const std::int64_t prec = n + 2 + logn + logm;
    const Interval range(-bound_m, bound_m);
    Dyadic sum;
    for (const auto& cell : cells) {
        const CertifiedValue mu = compute_measure(cell.set, table, prec, opt.partition.measure);
        if (mu.value.is_zero()) continue;
        const Interval fv = evaluate_to(f, cell.center, n + opt.f_slack, opt.f_precision_cap);
        if (!fv.intersects(range))
            throw InvalidBound("function value " + fv.mid().to_decimal(6, false) + " outside [-M, M]");
        sum += mu.value * fv.mid();
    }
    return {sum, -n};
}

}  // namespace haar
