#pragma once

#include <algorithm>

#include "haar/errors.hpp"
#include "haar/quadrature/integrand.hpp"

namespace haar {

/// f~(a + b i + c j + d k) = f((a + b i) / r) * r with r = |a + b i|, and
/// f~ = 0 on r = 0.
///
/// |f~(q) - f~(q')| <= M |r - r'| + min(r, r') |f(u) - f(u')| and
/// min(r, r') * angle(u, u') <= (pi / 2) |z - z'|, so with f L-Lipschitz in
/// the circle parameter t the constant is M + L / 4. The bound stays M.
///
/// f must have a fast evaluator reading (re, im).
inline IntegrandSpec lift_circle_function(const IntegrandSpec& f) {
    if (!f.fast) throw Unsupported("lift needs a circle function evaluable on (re, im)");
    IntegrandSpec out;
    out.lipschitz = f.bound + f.lipschitz.ldexp(-2);
    out.bound = f.bound;
    const double m = f.bound.to_double_up();
    auto fast = [inner = f.fast, m](const FastPoint& p) {
        const FInterval r = sqrt(sqr(p.q.w) + sqr(p.q.x));
        const FInterval cap = FInterval(r.hi()) * FInterval(m);
        const FInterval extension(-cap.hi(), cap.hi());
        if (r.lo() <= 0x1p-40) return extension;
        FastPoint u;
        u.re = intersect(p.q.w / r, FInterval(-1.0, 1.0));
        u.im = intersect(p.q.x / r, FInterval(-1.0, 1.0));
        const FInterval v = inner(u) * r;
        return FInterval(std::max(v.lo(), extension.lo()), std::min(v.hi(), extension.hi()));
    };
    out.fast = fast;
    out.eval = [fast](const Element& e, std::int64_t) {
        FastPoint p;
        p.q = to_fast(e.as<Versor>().q);
        return fast(p).to_interval();
    };
    return out;
}

}  // namespace haar
