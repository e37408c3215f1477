#pragma once

#include <cstdint>
#include <functional>

#include "haar/exactreal/float_interval.hpp"
#include "haar/group/element.hpp"
#include "haar/group/quaternion.hpp"

namespace haar {

/// A grid point as seen by the quadrature kernels: a unit quaternion, a sign
/// component and a point (re, im) = exp(2 pi i t) of the circle. Each group
/// reads only the parts it has.
struct FastPoint {
    Quat<FInterval> q{FInterval(1.0), {}, {}, {}};
    int sign = 1;
    FInterval re{1.0};
    FInterval im{0.0};
    Dyadic t;
};

/// f: G -> R with a Lipschitz constant w.r.t. the group metric and a bound
/// on |f|. `fast` is an optional double-interval evaluator used by the
/// quadrature kernels; without it they fall back to `eval`.
struct IntegrandSpec {
    std::function<Interval(const Element&, std::int64_t)> eval;
    Dyadic lipschitz;
    Dyadic bound;
    std::function<FInterval(const FastPoint&)> fast;
};

inline Quat<FInterval> to_fast(const Quat<Interval>& q) {
    return q.map([](const Interval& v) { return FInterval::from(v); });
}

inline Quat<Interval> to_exact(const Quat<FInterval>& q) {
    return q.map([](const FInterval& v) { return v.to_interval(); });
}

}  // namespace haar
