#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "haar/errors.hpp"
#include "haar/group/group.hpp"

namespace haar {

using MetricFn = std::function<Interval(const Element&, const Element&)>;

/// d'(a, b) = sup_x sup_y d(x a y, x b y).
///
/// Finite groups are searched exhaustively. Otherwise x and y range over an
/// explicit net of radius h; moving x or y by at most h moves each of x a y
/// and x b y by at most L^2 h (L = lipschitz_op), so the maximand moves by at
/// most 2 L^2 h and the sup lies within that of the grid maximum. h is
/// chosen so this slack is 2^-(p+1). Throws EffortExceeded once the grid
/// would hold more than `cap` pairs.
inline MetricFn biinvariant_metric(const Group& g, std::int64_t p, std::size_t cap = std::size_t{1} << 20) {
    if (g.is_finite()) {
        return [g, p](const Element& a, const Element& b) {
            Interval best(0);
            const auto k = static_cast<int>(g.order());
            for (int x = 0; x < k; ++x)
                for (int y = 0; y < k; ++y) {
                    const Element ex = FiniteIndex{x}, ey = FiniteIndex{y};
                    const Interval d = g.metric(g.op(g.op(ex, a, p), ey, p), g.op(g.op(ex, b, p), ey, p), p);
                    best = Interval(max(best.lo(), d.lo()), max(best.hi(), d.hi()));
                }
            return best;
        };
    }
    if (!g.net) throw Unsupported("group has no explicit net");
    const Dyadic l2 = g.lipschitz_op * g.lipschitz_op;
    // 2 L^2 h <= 2^-(p+1)
    const Dyadic h = Dyadic::div_floor(Dyadic::pow2(-(p + 2)), l2, p + 16);
    std::size_t side_cap = 1;
    while (side_cap * side_cap < cap) ++side_cap;
    const auto net = std::make_shared<const std::vector<Element>>(g.net(h, side_cap));
    if (net->size() * net->size() > cap) throw EffortExceeded("bi-invariant metric grid exceeds the cap");
    const Dyadic slack = l2.ldexp(1) * h;
    return [g, p, net, slack](const Element& a, const Element& b) {
        Interval best(0);
        for (const auto& x : *net)
            for (const auto& y : *net) {
                const Interval d = g.metric(g.op(g.op(x, a, p), y, p), g.op(g.op(x, b, p), y, p), p + 1);
                best = Interval(max(best.lo(), d.lo()), max(best.hi(), d.hi()));
            }
        return Interval(best.lo(), best.hi() + slack);
    };
}

}  // namespace haar
