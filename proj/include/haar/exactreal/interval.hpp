#pragma once

#include <ostream>
#include <utility>

#include "haar/errors.hpp"
#include "haar/exactreal/dyadic.hpp"

namespace haar {

/// Closed interval [lo, hi] with dyadic endpoints, lo <= hi.
///
/// +, -, * are exact on endpoints. Division and everything transcendental
/// round outward to a caller-supplied working precision p (a grid of 2^-p).
class Interval {
public:
    Interval() = default;
    Interval(int v) : lo_(v), hi_(v) {}  // NOLINT(google-explicit-constructor)
    Interval(const Dyadic& v) : lo_(v), hi_(v) {}  // NOLINT(google-explicit-constructor)
    Interval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (hi_ < lo_) throw InvalidArgument("interval with lo > hi");
    }

    const Dyadic& lo() const noexcept { return lo_; }
    const Dyadic& hi() const noexcept { return hi_; }
    Dyadic width() const { return hi_ - lo_; }
    /// Exact midpoint.
    Dyadic mid() const { return (lo_ + hi_).ldexp(-1); }
    Dyadic mag() const { return max(abs(lo_), abs(hi_)); }
    /// Smallest |x| over the interval.
    Dyadic mig() const {
        if (contains(Dyadic(0))) return {};
        return min(abs(lo_), abs(hi_));
    }

    bool contains(const Dyadic& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool intersects(const Interval& o) const { return !(hi_ < o.lo_ || o.hi_ < lo_); }
    bool is_point() const { return lo_ == hi_; }

    Interval operator-() const { return {-hi_, -lo_}; }

    friend Interval operator+(const Interval& a, const Interval& b) {
        return {a.lo_ + b.lo_, a.hi_ + b.hi_};
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        return {a.lo_ - b.hi_, a.hi_ - b.lo_};
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        if (a.is_point() && b.is_point()) return Interval(a.lo_ * b.lo_);
        Dyadic p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
        return {min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4))};
    }
    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }

    Interval ldexp(std::int64_t k) const { return {lo_.ldexp(k), hi_.ldexp(k)}; }

    /// Outward rounding of both endpoints to the grid 2^-p.
    Interval round_out(std::int64_t p) const { return {lo_.floor_to(p), hi_.ceil_to(p)}; }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

private:
    Dyadic lo_{};
    Dyadic hi_{};
};

inline Interval sqr(const Interval& x) {
    Dyadic a = x.mig(), b = x.mag();
    return {a * a, b * b};
}

inline Interval abs(const Interval& x) { return {x.mig(), x.mag()}; }

inline Interval hull(const Interval& a, const Interval& b) {
    return {min(a.lo(), b.lo()), max(a.hi(), b.hi())};
}

/// Intersection; throws if empty.
inline Interval intersect(const Interval& a, const Interval& b) {
    Dyadic lo = max(a.lo(), b.lo()), hi = min(a.hi(), b.hi());
    if (hi < lo) throw DomainError("empty intersection of intervals");
    return {lo, hi};
}

/// a / b, endpoints rounded outward to 2^-p.
inline Interval div(const Interval& a, const Interval& b, std::int64_t p) {
    if (b.contains(Dyadic(0)))
        throw DivisionByIntervalContainingZero("divisor interval contains 0");
    Dyadic q[4] = {Dyadic::div_floor(a.lo(), b.lo(), p), Dyadic::div_floor(a.lo(), b.hi(), p),
                   Dyadic::div_floor(a.hi(), b.lo(), p), Dyadic::div_floor(a.hi(), b.hi(), p)};
    Dyadic r[4] = {Dyadic::div_ceil(a.lo(), b.lo(), p), Dyadic::div_ceil(a.lo(), b.hi(), p),
                   Dyadic::div_ceil(a.hi(), b.lo(), p), Dyadic::div_ceil(a.hi(), b.hi(), p)};
    return {min(min(q[0], q[1]), min(q[2], q[3])), max(max(r[0], r[1]), max(r[2], r[3]))};
}

enum class ArithOp { add, sub, mul, div };

/// Single entry point for the four interval operations; `p` only matters for
/// division.
inline Interval interval_arith(const Interval& a, const Interval& b, ArithOp op, std::int64_t p) {
    switch (op) {
        case ArithOp::add: return a + b;
        case ArithOp::sub: return a - b;
        case ArithOp::mul: return a * b;
        case ArithOp::div: return div(a, b, p);
    }
    return {};
}

inline std::ostream& operator<<(std::ostream& os, const Interval& x) {
    return os << '[' << x.lo() << ", " << x.hi() << ']';
}

}  // namespace haar
