#pragma once

#include <cstdint>
#include <string>

#include "haar/errors.hpp"
#include "haar/exactreal/certified.hpp"
#include "haar/group/element.hpp"
#include "haar/quadrature/su2.hpp"

namespace haar {

/// Integral of f(exp(2 pi i t)) over t in [0, 1) to within 2^-n: midpoint
/// rule on N = 2^k cells with error L / (4N) for f L-Lipschitz in t.
inline CertifiedValue haar_integral_circle(const IntegrandSpec& f, std::int64_t n, const QuadratureOptions& opt = {}) {
    const double total = std::ldexp(1.0, static_cast<int>(-n));
    const double lip = f.lipschitz.to_double_up();
    const double m = f.bound.to_double_up();
    std::uint64_t cells = 1;
    std::int64_t k = 0;
    while (lip > 0.0 && static_cast<double>(cells) * 4.0 * total * (1.0 - 1.0 / 64.0) < lip) {
        cells *= 2;
        ++k;
        if (cells > opt.effort_cap)
            throw NoConvergence("circle grid exceeds the effort cap of " + std::to_string(opt.effort_cap));
    }
    FInterval sum(0.0);
    FastPoint pt;
    for (std::uint64_t c = 0; c < cells; ++c) {
        const auto [s, co] = detail::trig_pi_frac(2 * c + 1, cells);
        pt.re = co;
        pt.im = s;
        pt.t = Dyadic(BigInt(2 * c + 1), -(k + 1));
        const FInterval v = f.fast ? f.fast(pt) : FInterval::from(f.eval(circle_point(pt.t), 64));
        if (v.lo() > m || v.hi() < -m) throw InvalidBound("integrand value outside [-M, M]");
        sum += v;
    }
    sum = sum / FInterval(static_cast<double>(cells));
    const FInterval half(std::max(sum.hi() - sum.mid(), sum.mid() - sum.lo()));
    const double err = (FInterval(lip) / FInterval(4.0 * static_cast<double>(cells)) + half).hi();
    if (err > total) throw NoConvergence("circle quadrature error bound did not reach 2^-" + std::to_string(n));
    return {Dyadic::from_double(sum.mid()), -n};
}

}  // namespace haar
