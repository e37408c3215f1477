#pragma once

#include "haar/errors.hpp"
#include "haar/group/group.hpp"
#include "haar/group/instances.hpp"
#include "haar/quadrature/integrand.hpp"
#include "haar/quadrature/su2.hpp"

namespace haar {

enum class Side { left, right };

/// x -> f(g x) (left) or x -> f(x g) (right) on su2 or the circle. The
/// metrics are bi-invariant, so the Lipschitz constant carries over.
inline IntegrandSpec translate(const IntegrandSpec& f, GroupKind kind, const Element& g, Side side) {
    IntegrandSpec out = f;
    if (kind == GroupKind::su2 || kind == GroupKind::so3) {
        const Quat<Interval> gq = g.as<Versor>().q;
        const Quat<FInterval> gf = to_fast(gq);
        if (f.fast)
            out.fast = [inner = f.fast, gf, side](const FastPoint& p) {
                FastPoint m = p;
                m.q = side == Side::left ? gf * p.q : p.q * gf;
                return inner(m);
            };
        out.eval = [inner = f.eval, gq, side](const Element& e, std::int64_t p) {
            const Quat<Interval>& x = e.as<Versor>().q;
            Quat<Interval> y = side == Side::left ? gq * x : x * gq;
            y = y.map([p](const Interval& v) { return v.round_out(p + 8); });
            return inner(Versor{y}, p);
        };
        return out;
    }
    if (kind == GroupKind::circle) {
        const Dyadic s = g.as<TorusPoint>().coords.at(0);
        const auto [sin_s, cos_s] = sin_cos_enclosure(pi_raw(96) * Interval(s.ldexp(1)), 64);
        const FInterval fs = FInterval::from(sin_s), fc = FInterval::from(cos_s);
        if (f.fast)
            out.fast = [inner = f.fast, s, fs, fc](const FastPoint& p) {
                FastPoint m = p;
                m.re = intersect(p.re * fc - p.im * fs, FInterval(-1.0, 1.0));
                m.im = intersect(p.re * fs + p.im * fc, FInterval(-1.0, 1.0));
                m.t = wrap_unit(p.t + s);
                return inner(m);
            };
        out.eval = [inner = f.eval, s](const Element& e, std::int64_t p) {
            return inner(circle_point(wrap_unit(e.as<TorusPoint>().coords.at(0) + s)), p);
        };
        return out;
    }
    throw Unsupported("translation is implemented for su2, so3 and the circle");
}

/// x -> f(x^-1) on su2 or the circle.
inline IntegrandSpec invert(const IntegrandSpec& f, GroupKind kind) {
    IntegrandSpec out = f;
    if (kind == GroupKind::su2 || kind == GroupKind::so3) {
        if (f.fast)
            out.fast = [inner = f.fast](const FastPoint& p) {
                FastPoint m = p;
                m.q = p.q.conj();
                return inner(m);
            };
        out.eval = [inner = f.eval](const Element& e, std::int64_t p) {
            return inner(Versor{e.as<Versor>().q.conj()}, p);
        };
        return out;
    }
    if (kind == GroupKind::circle) {
        if (f.fast)
            out.fast = [inner = f.fast](const FastPoint& p) {
                FastPoint m = p;
                m.im = -p.im;
                m.t = wrap_unit(-p.t);
                return inner(m);
            };
        out.eval = [inner = f.eval](const Element& e, std::int64_t p) {
            return inner(circle_point(wrap_unit(-e.as<TorusPoint>().coords.at(0))), p);
        };
        return out;
    }
    throw Unsupported("inversion is implemented for su2, so3 and the circle");
}

}  // namespace haar
