#pragma once

#include <cstdint>
#include <string>

#include "haar/errors.hpp"
#include "haar/exactreal/certified.hpp"
#include "haar/group/group.hpp"
#include "haar/group/instances.hpp"
#include "haar/quadrature/circle.hpp"
#include "haar/quadrature/su2.hpp"

namespace haar {

/// SO(3), O(3) and U(2) through SU(2):
///  so3: f is read on versors, i.e. f composed with the double cover;
///  o3:  mean of the integrals over the two sign components;
///  u2:  SU(2) x U(1) grid, half the discretization budget for each factor.
inline CertifiedValue haar_integral_derived(GroupKind kind, const IntegrandSpec& f, std::int64_t n,
                                            const QuadratureOptions& opt = {}) {
    switch (kind) {
        case GroupKind::so3: return haar_integral_su2(f, n, opt);
        case GroupKind::o3: {
            auto component = [&](int sign) {
                if (f.fast) return detail::su2_integrate(f.fast, f.lipschitz, f.bound, n + 1, opt, false, sign);
                auto slow = [&](const FastPoint& p) {
                    return FInterval::from(f.eval(make_signed_element(Versor{to_exact(p.q)}, p.sign), 64));
                };
                return detail::su2_integrate(slow, f.lipschitz, f.bound, n + 1, opt, false, sign);
            };
            // Each half within 2^-(n+1); the mean is then within 2^-(n+1).
            const CertifiedValue a = component(1), b = component(-1);
            return {(a.value + b.value).ldexp(-1), -n};
        }
        case GroupKind::u2: {
            if (f.fast) return detail::su2_integrate(f.fast, f.lipschitz, f.bound, n, opt, true);
            auto slow = [&](const FastPoint& p) {
                return FInterval::from(f.eval(make_pair_element(Versor{to_exact(p.q)}, circle_point(p.t)), 64));
            };
            return detail::su2_integrate(slow, f.lipschitz, f.bound, n, opt, true);
        }
        default: throw Unsupported(std::string("no quadrature for group kind ") + to_string(kind));
    }
}

/// Quadrature dispatch over circle, su2, so3, o3 and u2.
inline CertifiedValue haar_integral_quadrature(GroupKind kind, const IntegrandSpec& f, std::int64_t n,
                                               const QuadratureOptions& opt = {}) {
    switch (kind) {
        case GroupKind::circle: return haar_integral_circle(f, n, opt);
        case GroupKind::su2: return haar_integral_su2(f, n, opt);
        default: return haar_integral_derived(kind, f, n, opt);
    }
}

}  // namespace haar
