#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "haar/errors.hpp"
#include "haar/exactreal/certified.hpp"
#include "haar/exactreal/elementary.hpp"
#include "haar/exactreal/float_interval.hpp"
#include "haar/exactreal/pi.hpp"
#include "haar/quadrature/integrand.hpp"

namespace haar {

struct QuadratureOptions {
    /// Largest number of integrand evaluations before giving up.
    std::uint64_t effort_cap = 20'000'000'000ULL;
    /// Passes with a refined grid when the first error bound misses.
    int max_passes = 8;
};

namespace detail {

inline FInterval pi_f() {
    static const FInterval v = FInterval::from(pi_raw(80));
    return v;
}

// sin and cos of pi * num / den.
inline std::pair<FInterval, FInterval> trig_pi_frac(std::uint64_t num, std::uint64_t den) {
    const Interval x = div(pi_raw(96) * Interval(Dyadic(BigInt(num), 0)), Interval(Dyadic(BigInt(den), 0)), 90);
    const auto [s, c] = sin_cos_enclosure(x, 64);
    return {FInterval::from(s), FInterval::from(c)};
}

// Edges k * span * pi / count and midpoints of the uniform grid on
// [0, span * pi).
struct TrigTable {
    std::vector<FInterval> s_edge, c_edge, s_mid, c_mid;

    TrigTable(std::uint64_t count, std::uint64_t span) {
        for (std::uint64_t k = 0; k <= count; ++k) {
            auto [s, c] = trig_pi_frac(k * span, count);
            s_edge.push_back(s);
            c_edge.push_back(c);
        }
        for (std::uint64_t k = 0; k < count; ++k) {
            auto [s, c] = trig_pi_frac((2 * k + 1) * span, 2 * count);
            s_mid.push_back(s);
            c_mid.push_back(c);
        }
    }

    // sup of sin over cell k of a grid on [0, pi).
    double sup_sin(std::size_t k, std::uint64_t count) const {
        if (2 * (k + 1) <= count) return s_edge[k + 1].hi();
        if (2 * k >= count) return s_edge[k].hi();
        return 1.0;
    }
};

inline const TrigTable& trig_table(std::map<std::uint64_t, TrigTable>& cache, std::uint64_t count,
                                   std::uint64_t span) {
    auto it = cache.find(count);
    if (it == cache.end()) it = cache.emplace(count, TrigTable(count, span)).first;
    return it->second;
}

// Rounds a cell count up to 1..7 or m * 2^e with m in 4..7, so that only a
// few distinct tables are needed.
inline std::uint64_t quantize_count(double want) {
    if (!(want >= 1.0)) return 1;
    const auto n = static_cast<std::uint64_t>(std::ceil(want));
    if (n <= 7) return n;
    std::uint64_t scale = 1;
    while ((n + scale - 1) / scale > 7) scale *= 2;
    return ((n + scale - 1) / scale) * scale;
}

// a * c for a with a.lo() >= 0.
inline FInterval scale_nonneg(const FInterval& a, const FInterval& c) {
    const double lo = c.lo() * (c.lo() >= 0.0 ? a.lo() : a.hi());
    const double hi = c.hi() * (c.hi() >= 0.0 ? a.hi() : a.lo());
    return {FInterval::down(lo), FInterval::up(hi)};
}

struct GridSum {
    FInterval sum;
    double error = 0.0;
    std::uint64_t cells = 0;
};

// One pass of the composite midpoint rule on the parameter box
// [0, pi) x [0, pi) x [0, 2 pi), eta uniform in n_eta slabs and the theta /
// phi counts adapted to sin(eta), sin(eta) sin(theta) so that all three
// metric side lengths are about h_eta. Every point is additionally averaged
// over n_circle midpoints of the circle, for products with U(1).
//
// Per strip, |f(Psi(x)) - f(Psi(m))| <= L * |x - m|_g with the metric
// ds^2 = d eta^2 + sin^2 eta d theta^2 + sin^2 eta sin^2 theta d phi^2, and
// the mean of |x - m|_g over a box is at most sqrt((h1^2 + S1^2 h2^2 +
// S2^2 h3^2) / 12), giving L * supJ * vol * sqrt(...) per strip.
template <class Fn>
GridSum su2_pass(const Fn& f, double lipschitz, double bound, std::uint64_t n_eta, std::uint64_t n_circle,
                 int sign, std::uint64_t effort_cap) {
    const FInterval pi = pi_f();
    const FInterval two_pi = FInterval(2.0) * pi;
    const FInterval h_eta = pi / FInterval(static_cast<double>(n_eta));
    const TrigTable eta(n_eta, 1);
    std::map<std::uint64_t, TrigTable> theta_tables, phi_tables;
    std::vector<FInterval> cre, cim;
    std::vector<Dyadic> ct;
    for (std::uint64_t c = 0; c < n_circle; ++c) {
        // t = (2c + 1) / (2 n_circle)
        auto [s, co] = trig_pi_frac(2 * c + 1, n_circle);
        cre.push_back(co);
        cim.push_back(s);
        ct.push_back(Dyadic::div_floor(Dyadic(static_cast<long long>(2 * c + 1)),
                                       Dyadic(static_cast<long long>(2 * n_circle)), 64));  // exact: n_circle = 2^k
    }
    const FInterval circle_w = FInterval(1.0) / FInterval(static_cast<double>(n_circle));

    GridSum out;
    FInterval err(0.0);
    FastPoint pt;
    pt.sign = sign;
    for (std::uint64_t k = 0; k < n_eta; ++k) {
        const double s1 = eta.sup_sin(k, n_eta);
        const FInterval sin2a = FInterval(2.0) * eta.s_edge[k] * eta.c_edge[k];
        const FInterval sin2b = FInterval(2.0) * eta.s_edge[k + 1] * eta.c_edge[k + 1];
        FInterval slab_w = h_eta * FInterval(0.5) - (sin2b - sin2a) * FInterval(0.25);
        slab_w = FInterval(std::max(0.0, slab_w.lo()), slab_w.hi());

        const std::uint64_t n_theta = quantize_count(s1 * static_cast<double>(n_eta));
        const TrigTable& th = trig_table(theta_tables, n_theta, 1);
        const FInterval h_theta = pi / FInterval(static_cast<double>(n_theta));
        const FInterval w = eta.c_mid[k], se = eta.s_mid[k];
        pt.q.w = w;
        for (std::uint64_t j = 0; j < n_theta; ++j) {
            const double st_sup = th.sup_sin(j, n_theta);
            const double s2 = s1 * st_sup;
            const FInterval strip_w = th.c_edge[j] - th.c_edge[j + 1];
            const std::uint64_t n_phi = quantize_count(2.0 * s2 * static_cast<double>(n_eta));
            const TrigTable& ph = trig_table(phi_tables, n_phi, 2);
            const FInterval h_phi = two_pi / FInterval(static_cast<double>(n_phi));
            out.cells += n_phi * n_circle;
            if (out.cells > effort_cap)
                throw NoConvergence("quadrature grid exceeds the effort cap of " + std::to_string(effort_cap) +
                                    " evaluations");

            pt.q.x = se * th.c_mid[j];
            FInterval a = se * th.s_mid[j];
            a = FInterval(std::max(0.0, a.lo()), a.hi());
            FInterval sum(0.0);
            for (std::uint64_t i = 0; i < n_phi; ++i) {
                pt.q.y = scale_nonneg(a, ph.c_mid[i]);
                pt.q.z = scale_nonneg(a, ph.s_mid[i]);
                FInterval v;
                if (n_circle == 1) {
                    v = f(pt);
                } else {
                    FInterval acc(0.0);
                    for (std::uint64_t c = 0; c < n_circle; ++c) {
                        pt.re = cre[c];
                        pt.im = cim[c];
                        pt.t = ct[c];
                        acc += f(pt);
                    }
                    v = acc * circle_w;
                }
                if (v.lo() > bound || v.hi() < -bound)
                    throw InvalidBound("integrand value outside [-M, M]");
                sum += v;
            }
            out.sum += slab_w * strip_w * h_phi * sum;

            if (lipschitz > 0.0) {
                const FInterval S1(s1), S2(s2);
                const FInterval q = sqr(h_eta) + sqr(S1 * h_theta) + sqr(S2 * h_phi);
                const FInterval mean = sqrt(q / FInterval(12.0));
                const FInterval sup_j = sqr(S1) * FInterval(st_sup);
                err += FInterval(lipschitz) * sup_j * h_eta * h_theta * two_pi * mean;
            }
        }
    }
    const FInterval norm = FInterval(1.0) / (FInterval(2.0) * sqr(pi));
    out.sum = out.sum * norm;
    out.error = (err * norm).hi();
    return out;
}

// Drives su2_pass until the certified error fits 2^-n. The circle factor, if
// any, takes half of the discretization budget: L / (4 n_circle) <= E / 2.
template <class Fn>
CertifiedValue su2_integrate(const Fn& f, const Dyadic& lipschitz, const Dyadic& bound, std::int64_t n,
                             const QuadratureOptions& opt, bool with_circle, int sign = 1) {
    const double total = std::ldexp(1.0, static_cast<int>(-n));
    const double target = total * (1.0 - 1.0 / 64.0);
    const double lip = lipschitz.to_double_up();
    const double m = bound.to_double_up();
    double su2_target = with_circle ? target / 2 : target;
    std::uint64_t n_circle = 1;
    if (with_circle && lip > 0.0)
        while (static_cast<double>(n_circle) < lip / (4.0 * (target / 2))) n_circle *= 2;
    const double circle_err = with_circle && lip > 0.0 ? FInterval::up(lip / (4.0 * static_cast<double>(n_circle))) : 0.0;
    double want = lip > 0.0 ? 3.14159266 * lip / (2.0 * su2_target) * 1.02 : 1.0;
    for (int pass = 0; pass < opt.max_passes; ++pass) {
        const auto n_eta = static_cast<std::uint64_t>(std::ceil(want));
        const GridSum g = su2_pass(f, lip, m, n_eta, n_circle, sign, opt.effort_cap);
        const Dyadic value = Dyadic::from_double(g.sum.mid());
        const FInterval half(std::max(g.sum.hi() - g.sum.mid(), g.sum.mid() - g.sum.lo()));
        const double err = (FInterval(g.error) + FInterval(circle_err) + half).hi();
        if (err <= total) return {value, -n};
        want *= 1.15;
    }
    throw NoConvergence("quadrature error bound did not reach 2^-" + std::to_string(n));
}

}  // namespace detail

/// Haar integral over SU(2) (elements are Versors) to within 2^-n.
inline CertifiedValue haar_integral_su2(const IntegrandSpec& f, std::int64_t n, const QuadratureOptions& opt = {}) {
    if (f.fast) return detail::su2_integrate(f.fast, f.lipschitz, f.bound, n, opt, false);
    auto slow = [&](const FastPoint& p) { return FInterval::from(f.eval(Versor{to_exact(p.q)}, 64)); };
    return detail::su2_integrate(slow, f.lipschitz, f.bound, n, opt, false);
}

}  // namespace haar
