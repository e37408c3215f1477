#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <utility>

#include "haar/errors.hpp"
#include "haar/exactreal/interval.hpp"
#include "haar/exactreal/pi.hpp"

namespace haar {

namespace detail {

inline std::int64_t bits_of(std::int64_t v) {
    std::int64_t b = 0;
    while (v > 0) {
        ++b;
        v >>= 1;
    }
    return b;
}

inline Interval from_fixed(const BigInt& v, const BigInt& err, std::int64_t f) {
    return {Dyadic(v - err, -f), Dyadic(v + err, -f)};
}

// sin and cos of x (|x| <= 1) as fixed-point integers at scale 2^f, each
// within `err` units of the true value.
inline void sin_cos_taylor(const BigInt& x, std::int64_t f, BigInt& s, BigInt& c, BigInt& err) {
    const BigInt one = BigInt(1) << static_cast<unsigned>(f);
    const BigInt x2 = (x * x) >> static_cast<unsigned>(f);
    // sin: t_0 = x, t_{k+1} = -t_k x^2 / ((2k+2)(2k+3))
    s = 0;
    c = 0;
    std::int64_t terms = 0;
    BigInt t = x;
    for (unsigned k = 0; !t.is_zero(); ++k, ++terms) {
        s += t;
        t = -((t * x2) >> static_cast<unsigned>(f)) / ((2 * k + 2) * (2 * k + 3));
    }
    t = one;
    for (unsigned k = 0; !t.is_zero(); ++k, ++terms) {
        c += t;
        t = -((t * x2) >> static_cast<unsigned>(f)) / ((2 * k + 1) * (2 * k + 2));
    }
    err = BigInt(4 * terms + 8);
}

// Ziv-style rounding: floor (or ceil) of the real value enclosed by
// eval(q) for growing q, onto the grid 2^-g. Falls back to the outward
// rounding of the last enclosure if the value sits on the grid.
inline Dyadic round_value(const std::function<Interval(std::int64_t)>& eval, std::int64_t g, bool up) {
    Interval e;
    for (std::int64_t q = g + 10; q <= g + 10 + 4 * 64; q += 64) {
        e = eval(q);
        const Dyadic a = up ? e.lo().ceil_to(g) : e.lo().floor_to(g);
        const Dyadic b = up ? e.hi().ceil_to(g) : e.hi().floor_to(g);
        if (a == b) return a;
    }
    return up ? e.hi().ceil_to(g) : e.lo().floor_to(g);
}

// floor(x / pi - c) for c in {0, 1/2}, decided exactly.
inline BigInt floor_div_pi(const Dyadic& x, const Dyadic& c) {
    if (x.is_zero() && c.is_zero()) return 0;
    for (std::int64_t q = 32 + (x.is_zero() ? 0 : std::max<std::int64_t>(0, x.msb()));; q += 64) {
        Interval v = div(Interval(x), pi_raw(q), q) - Interval(c);
        BigInt a = v.lo().floor_int(), b = v.hi().floor_int();
        if (a == b) return a;
    }
}

}  // namespace detail

/// sin and cos of a dyadic point, each enclosure of width about 2^-q.
inline std::pair<Interval, Interval> sin_cos_point(const Dyadic& x, std::int64_t q) {
    if (x.is_zero()) return {Interval(0), Interval(1)};
    const std::int64_t f = q + 16 + detail::bits_of(q);
    // x = k pi/2 + r with |r| <= pi/4 + tiny
    const std::int64_t qq = f + 8 + std::max<std::int64_t>(0, x.msb());
    const Interval half_pi = pi_raw(qq).ldexp(-1);
    const BigInt k = (Dyadic::div_floor(x, half_pi.mid(), 2) + Dyadic::pow2(-1)).floor_int();
    const Interval r = Interval(x) - half_pi * Interval(Dyadic(k, 0));
    const Dyadic m = r.mid().floor_to(f);
    const Dyadic rad = max(r.hi() - m, m - r.lo());
    BigInt s, c, err;
    detail::sin_cos_taylor(m.ldexp(f).floor_int(), f, s, c, err);
    const Interval slack(-rad, rad);
    Interval si = detail::from_fixed(s, err, f) + slack;
    Interval co = detail::from_fixed(c, err, f) + slack;
    const int quadrant = static_cast<int>(static_cast<long long>(((k % 4) + 4) % 4));
    switch (quadrant) {
        case 0: return {si.round_out(f), co.round_out(f)};
        case 1: return {co.round_out(f), (-si).round_out(f)};
        case 2: return {(-si).round_out(f), (-co).round_out(f)};
        default: return {(-co).round_out(f), si.round_out(f)};
    }
}

/// sin and cos of an interval argument, without the exact-range logic:
/// width about width(x) + 2^-q. Used for bulk tables.
inline std::pair<Interval, Interval> sin_cos_enclosure(const Interval& x, std::int64_t q) {
    const Dyadic m = x.mid().floor_to(q + 8);
    const Dyadic rad = max(x.hi() - m, m - x.lo());
    auto [s, c] = sin_cos_point(m, q);
    const Interval slack(-rad, rad);
    return {intersect(s + slack, Interval(-1, 1)), intersect(c + slack, Interval(-1, 1))};
}

/// floor(sqrt(x)) and ceil(sqrt(x)) on the grid 2^-q, exactly.
inline Dyadic sqrt_floor(const Dyadic& x, std::int64_t q) {
    if (x.sign() <= 0) return {};
    const Dyadic scaled = x.ldexp(2 * q);
    return Dyadic(boost::multiprecision::sqrt(scaled.floor_int()), -q);
}
inline Dyadic sqrt_ceil(const Dyadic& x, std::int64_t q) {
    if (x.sign() <= 0) return {};
    const Dyadic s = sqrt_floor(x, q);
    if (s * s == x) return s;
    return s + Dyadic::pow2(-q);
}

/// sqrt over an interval, rounded outward to 2^-q; negative parts clamped.
inline Interval sqrt_interval(const Interval& x, std::int64_t q) {
    if (x.hi().sign() < 0) throw DomainError("sqrt of a negative interval");
    return {sqrt_floor(x.lo(), q), sqrt_ceil(x.hi(), q)};
}

namespace detail {

// atan on a nonnegative interval, width about width(y) + 2^-q.
inline Interval atan_nonneg(Interval y, std::int64_t q) {
    const std::int64_t f = q + 24 + bits_of(q);
    // atan(y) = 2 atan(y / (1 + sqrt(1 + y^2))); the map is increasing,
    // so it is applied endpoint-wise.
    auto halve = [&](const Dyadic& v, bool up) {
        const Interval s = sqrt_interval(Interval(1) + Interval(v * v), f + 4);
        const Interval d = div(Interval(v), Interval(1) + s, f + 4);
        return up ? d.hi() : d.lo();
    };
    int h = 0;
    const Dyadic small = Dyadic::pow2(-8);
    while (small < y.hi()) {
        y = Interval(max(Dyadic(0), halve(y.lo(), false)), halve(y.hi(), true));
        ++h;
    }
    // Alternating series; for 0 <= z <= 2^-8 the terms shrink, so the
    // truncation error is at most the first omitted term.
    auto series = [&](const Dyadic& z, bool up) {
        if (z.is_zero()) return Dyadic();
        const std::int64_t g = f + h;
        const BigInt x = z.ldexp(g).floor_int();
        const BigInt x2 = (x * x) >> static_cast<unsigned>(g);
        BigInt sum = 0, power = x;
        std::int64_t terms = 0;
        for (unsigned j = 0; !power.is_zero(); ++j, ++terms) {
            BigInt t = power / (2 * j + 1);
            sum += (j % 2 == 0) ? t : BigInt(-t);
            power = (power * x2) >> static_cast<unsigned>(g);
        }
        // The floor of z moves the result by at most 2^-g (atan is 1-Lipschitz).
        const BigInt err = 3 * terms + 4;
        return up ? Dyadic(sum + err, -g) : Dyadic(sum - err, -g);
    };
    Interval r(max(Dyadic(0), series(y.lo(), false)), series(y.hi(), true));
    return r.ldexp(h);
}

// arccos at a dyadic point in [-1, 1].
inline Interval arccos_point(const Dyadic& t, std::int64_t q) {
    if (t == Dyadic(1)) return Interval(0);
    const std::int64_t f = q + 8;
    if (t == Dyadic(-1)) return pi_raw(f);
    // arccos t = 2 atan(sqrt((1 - t) / (1 + t)))
    const Interval v = div(Interval(Dyadic(1) - t), Interval(Dyadic(1) + t), 2 * f + 8);
    const Interval y = sqrt_interval(v, f + 4);
    return atan_nonneg(y, f).ldexp(1);
}

}  // namespace detail

enum class ElemFn { sin, cos, sqrt, arccos, abs };

inline Interval sin_enclosure(const Interval& x, std::int64_t p) {
    if (Dyadic(7) < x.width()) return {Dyadic(-1), Dyadic(1)};
    const std::int64_t g = p + 1;
    auto val = [](const Dyadic& a) { return [a](std::int64_t q) { return sin_cos_point(a, q).first; }; };
    Dyadic lo = min(detail::round_value(val(x.lo()), g, false), detail::round_value(val(x.hi()), g, false));
    Dyadic hi = max(detail::round_value(val(x.lo()), g, true), detail::round_value(val(x.hi()), g, true));
    // Extrema at pi/2 + k pi, value (-1)^k.
    const BigInt k1 = detail::floor_div_pi(x.lo(), Dyadic::pow2(-1));
    const BigInt k2 = detail::floor_div_pi(x.hi(), Dyadic::pow2(-1));
    for (BigInt k = k1 + 1; k <= k2; ++k) {
        if (k % 2 == 0)
            hi = Dyadic(1);
        else
            lo = Dyadic(-1);
    }
    return {lo, hi};
}

inline Interval cos_enclosure(const Interval& x, std::int64_t p) {
    if (Dyadic(7) < x.width()) return {Dyadic(-1), Dyadic(1)};
    const std::int64_t g = p + 1;
    auto val = [](const Dyadic& a) { return [a](std::int64_t q) { return sin_cos_point(a, q).second; }; };
    Dyadic lo = min(detail::round_value(val(x.lo()), g, false), detail::round_value(val(x.hi()), g, false));
    Dyadic hi = max(detail::round_value(val(x.lo()), g, true), detail::round_value(val(x.hi()), g, true));
    // Extrema at k pi for ceil(lo/pi) <= k <= floor(hi/pi), value (-1)^k.
    const BigInt k1 = -detail::floor_div_pi(-x.lo(), Dyadic(0));
    const BigInt k2 = detail::floor_div_pi(x.hi(), Dyadic(0));
    for (BigInt k = k1; k <= k2; ++k) {
        if (k % 2 == 0)
            hi = Dyadic(1);
        else
            lo = Dyadic(-1);
    }
    return {lo, hi};
}

/// sqrt rounded outward to 2^-(p+1); a lower endpoint below 0 is clamped.
/// Near 0 the width is bounded by sqrt(width) + 2^-p rather than L * width.
inline Interval sqrt_enclosure(const Interval& x, std::int64_t p) { return sqrt_interval(x, p + 1); }

/// arccos of x intersected with [-1, 1]; x may overhang by at most 2^-p.
inline Interval arccos_enclosure(const Interval& x, std::int64_t p) {
    const Dyadic tol = Dyadic::pow2(-p);
    if (x.lo() < Dyadic(-1) - tol || Dyadic(1) + tol < x.hi())
        throw DomainError("arccos argument outside [-1, 1]");
    const Interval t = intersect(x, Interval(-1, 1));
    const std::int64_t g = p + 1;
    // arccos is decreasing.
    const Dyadic lo = detail::round_value([&](std::int64_t q) { return detail::arccos_point(t.hi(), q); }, g, false);
    const Dyadic hi = detail::round_value([&](std::int64_t q) { return detail::arccos_point(t.lo(), q); }, g, true);
    return {lo, hi};
}

inline Interval elementary_enclosure(ElemFn fn, const Interval& x, std::int64_t p) {
    switch (fn) {
        case ElemFn::sin: return sin_enclosure(x, p);
        case ElemFn::cos: return cos_enclosure(x, p);
        case ElemFn::sqrt: return sqrt_enclosure(x, p);
        case ElemFn::arccos: return arccos_enclosure(x, p);
        case ElemFn::abs: return abs(x);
    }
    return x;
}

}  // namespace haar
