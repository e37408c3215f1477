#pragma once

#include <cstdint>

#include "haar/exactreal/elementary.hpp"
#include "haar/exactreal/pi.hpp"
#include "haar/group/element.hpp"

namespace haar {

/// Spherical parameters of S^3: eta, theta in [0, pi), phi in [0, 2 pi).
struct ParamPoint {
    Interval eta;
    Interval theta;
    Interval phi;
};

/// (a pi / 2^l, b pi / 2^l, 2 c pi / 2^l) for 0 <= a, b, c < 2^l.
inline ParamPoint dyadic_param_point(std::uint64_t a, std::uint64_t b, std::uint64_t c, int level, std::int64_t wp) {
    const Interval pi = pi_raw(wp + 4);
    auto frac = [&](std::uint64_t k, int extra) {
        return pi * Interval(Dyadic(BigInt(k), extra - level));
    };
    return {frac(a, 0), frac(b, 0), frac(c, 1)};
}

/// Psi(eta, theta, phi) = cos eta + i sin eta cos theta
///   + j sin eta sin theta cos phi + k sin eta sin theta sin phi.
inline Versor psi(const ParamPoint& p, std::int64_t wp) {
    const auto [se, ce] = sin_cos_enclosure(p.eta, wp + 4);
    const auto [st, ct] = sin_cos_enclosure(p.theta, wp + 4);
    const auto [sp, cp] = sin_cos_enclosure(p.phi, wp + 4);
    const Interval set = se * st;
    return Versor{{ce.round_out(wp + 2), (se * ct).round_out(wp + 2), (set * cp).round_out(wp + 2),
                   (set * sp).round_out(wp + 2)}};
}

/// sin^2(eta) sin(theta), the volume density of Psi.
inline Interval jacobian(const Interval& eta, const Interval& theta, std::int64_t wp) {
    const Interval se = sin_enclosure(eta, wp + 4);
    const Interval st = sin_enclosure(theta, wp + 4);
    const Interval j = sqr(se) * st;
    return Interval(max(Dyadic(0), j.lo()), max(Dyadic(0), j.hi())).round_out(wp + 2);
}

}  // namespace haar
