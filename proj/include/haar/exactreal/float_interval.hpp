#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "haar/errors.hpp"
#include "haar/exactreal/interval.hpp"

namespace haar {

// Interval with double endpoints for the quadrature inner loops.
//
// Every IEEE basic operation (+ - * / sqrt) is correctly rounded to nearest,
// so the exact result lies within half an ulp of the computed one. Moving
// each endpoint outward by |x| 2^-52 + 2^-1074 (at least one ulp, and the
// shift itself rounds monotonically) makes the enclosure sound without
// touching the floating-point environment.
class FInterval {
public:
    constexpr FInterval() = default;
    constexpr FInterval(double v) : lo_(v), hi_(v) {}  // NOLINT(google-explicit-constructor)
    constexpr FInterval(double lo, double hi) : lo_(lo), hi_(hi) {}

    static FInterval from(const Interval& x) {
        return {x.lo().to_double_down(), x.hi().to_double_up()};
    }
    Interval to_interval() const { return {Dyadic::from_double(lo_), Dyadic::from_double(hi_)}; }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return 0.5 * (lo_ + hi_); }
    double width_up() const { return up(hi_ - lo_); }
    double mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }
    double mig() const {
        if (lo_ <= 0.0 && hi_ >= 0.0) return 0.0;
        return std::min(std::fabs(lo_), std::fabs(hi_));
    }
    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains(const FInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }

    static double down(double x) { return x - (std::fabs(x) * 0x1p-52 + 0x1p-1074); }
    static double up(double x) { return x + (std::fabs(x) * 0x1p-52 + 0x1p-1074); }

    FInterval operator-() const { return {-hi_, -lo_}; }
    friend FInterval operator+(const FInterval& a, const FInterval& b) {
        return {down(a.lo_ + b.lo_), up(a.hi_ + b.hi_)};
    }
    friend FInterval operator-(const FInterval& a, const FInterval& b) {
        return {down(a.lo_ - b.hi_), up(a.hi_ - b.lo_)};
    }
    friend FInterval operator*(const FInterval& a, const FInterval& b) {
        const double p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
        return {down(std::min(std::min(p1, p2), std::min(p3, p4))), up(std::max(std::max(p1, p2), std::max(p3, p4)))};
    }
    friend FInterval operator/(const FInterval& a, const FInterval& b) {
        if (b.lo_ <= 0.0 && b.hi_ >= 0.0)
            throw DivisionByIntervalContainingZero("divisor interval contains 0");
        const double p1 = a.lo_ / b.lo_, p2 = a.lo_ / b.hi_, p3 = a.hi_ / b.lo_, p4 = a.hi_ / b.hi_;
        return {down(std::min({p1, p2, p3, p4})), up(std::max({p1, p2, p3, p4}))};
    }
    FInterval& operator+=(const FInterval& o) { return *this = *this + o; }
    FInterval& operator-=(const FInterval& o) { return *this = *this - o; }
    FInterval& operator*=(const FInterval& o) { return *this = *this * o; }

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

inline FInterval sqr(const FInterval& x) {
    const double a = x.mig(), b = x.mag();
    return {FInterval::down(a * a), FInterval::up(b * b)};
}

inline FInterval abs(const FInterval& x) { return {x.mig(), x.mag()}; }

inline FInterval hull(const FInterval& a, const FInterval& b) {
    return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

inline FInterval intersect(const FInterval& a, const FInterval& b) {
    const double lo = std::max(a.lo(), b.lo()), hi = std::min(a.hi(), b.hi());
    if (hi < lo) throw DomainError("empty intersection of intervals");
    return {lo, hi};
}

inline FInterval sqrt(const FInterval& x) {
    if (x.hi() < 0.0) throw DomainError("sqrt of a negative interval");
    const double lo = x.lo() <= 0.0 ? 0.0 : std::max(0.0, FInterval::down(std::sqrt(x.lo())));
    return {lo, FInterval::up(std::sqrt(x.hi()))};
}

inline std::ostream& operator<<(std::ostream& os, const FInterval& x) {
    return os << '[' << x.lo() << ", " << x.hi() << ']';
}

}  // namespace haar
