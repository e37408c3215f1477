#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "haar/errors.hpp"

namespace haar {

using BigInt = boost::multiprecision::cpp_int;

/// Exact dyadic rational mantissa * 2^exponent.
///
/// Canonical form: the mantissa is odd, or zero with exponent 0. Addition,
/// subtraction and multiplication are exact. Anything that cannot be exact
/// (division, conversion to double) takes an explicit rounding direction.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(int v) : mant_(v) { normalize(); }  // NOLINT(google-explicit-constructor)
    Dyadic(long v) : mant_(v) { normalize(); }  // NOLINT
    Dyadic(long long v) : mant_(v) { normalize(); }  // NOLINT
    Dyadic(BigInt m, std::int64_t e) : mant_(std::move(m)), exp_(e) { normalize(); }

    static Dyadic pow2(std::int64_t e) { return Dyadic(BigInt(1), e); }

    /// Exact conversion; every finite double is a dyadic rational.
    static Dyadic from_double(double d) {
        if (!std::isfinite(d)) throw InvalidArgument("non-finite double");
        if (d == 0.0) return {};
        int e = 0;
        double frac = std::frexp(d, &e);  // d = frac * 2^e, 0.5 <= |frac| < 1
        auto m = static_cast<std::int64_t>(std::ldexp(frac, 53));
        return Dyadic(BigInt(m), static_cast<std::int64_t>(e) - 53);
    }

    const BigInt& mantissa() const noexcept { return mant_; }
    std::int64_t exponent() const noexcept { return exp_; }

    bool is_zero() const noexcept { return mant_.is_zero(); }
    int sign() const noexcept { return mant_.sign(); }

    /// Position of the most significant bit: 2^msb <= |x| < 2^(msb+1).
    std::int64_t msb() const {
        return static_cast<std::int64_t>(boost::multiprecision::msb(abs_mant())) + exp_;
    }

    Dyadic operator-() const { return Dyadic(-mant_, exp_); }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.exp_ <= b.exp_)
            return Dyadic(a.mant_ + (b.mant_ << static_cast<unsigned>(b.exp_ - a.exp_)), a.exp_);
        return Dyadic((a.mant_ << static_cast<unsigned>(a.exp_ - b.exp_)) + b.mant_, b.exp_);
    }
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        if (a.is_zero() || b.is_zero()) return {};
        return Dyadic(a.mant_ * b.mant_, a.exp_ + b.exp_);
    }
    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
    Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

    /// Multiplication by 2^k.
    Dyadic ldexp(std::int64_t k) const {
        if (is_zero()) return {};
        return Dyadic(mant_, exp_ + k);
    }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exp_ == b.exp_ && a.mant_ == b.mant_;
    }
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
        const int s = (a - b).sign();
        return s < 0 ? std::strong_ordering::less
                     : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// Largest multiple of 2^-p not above the value.
    Dyadic floor_to(std::int64_t p) const { return round_to(p, false); }
    /// Smallest multiple of 2^-p not below the value.
    Dyadic ceil_to(std::int64_t p) const { return round_to(p, true); }

    /// floor / ceil to an integer.
    BigInt floor_int() const { return floor_to(0).integer_value(); }
    BigInt ceil_int() const { return ceil_to(0).integer_value(); }

    /// Quotient rounded down (up) to a multiple of 2^-p.
    static Dyadic div_floor(const Dyadic& a, const Dyadic& b, std::int64_t p) {
        return div_round(a, b, p, false);
    }
    static Dyadic div_ceil(const Dyadic& a, const Dyadic& b, std::int64_t p) {
        return div_round(a, b, p, true);
    }

    /// Nearest double in the given direction (never overflows for the
    /// magnitudes this library produces).
    double to_double_down() const { return to_double_dir(false); }
    double to_double_up() const { return to_double_dir(true); }
    /// Round-to-nearest-ish conversion for display and heuristics only.
    double to_double() const {
        if (is_zero()) return 0.0;
        const auto shift = std::max<std::int64_t>(0, msb() - exp_ - 60);
        BigInt m = mant_ >> static_cast<unsigned>(shift);
        return std::ldexp(static_cast<double>(m), static_cast<int>(exp_ + shift));
    }

    /// Decimal string with `digits` fractional digits, rounded in the given
    /// direction (down = toward -inf).
    std::string to_decimal(int digits, bool up) const;
    /// Exact textual form `mantissa*2^exponent`.
    std::string to_exact_string() const {
        return mant_.str() + "*2^" + std::to_string(exp_);
    }

    /// Parses `m*2^e`, `p/q` with q a power of two, integers, and decimal
    /// literals whose value is dyadic (e.g. 0.375).
    static Dyadic parse(std::string_view s);

private:
    BigInt abs_mant() const { return mant_.sign() < 0 ? BigInt(-mant_) : mant_; }

    BigInt integer_value() const {
        // Only valid when exp_ >= 0.
        return mant_ << static_cast<unsigned>(exp_);
    }

    void normalize() {
        if (mant_.is_zero()) {
            exp_ = 0;
            return;
        }
        const auto tz = boost::multiprecision::lsb(abs_mant());
        if (tz > 0) {
            mant_ >>= tz;  // exact: the low bits are zero (arithmetic shift keeps sign)
            exp_ += static_cast<std::int64_t>(tz);
        }
    }

    Dyadic round_to(std::int64_t p, bool up) const {
        if (is_zero() || exp_ >= -p) return *this;
        const auto shift = static_cast<unsigned>(-p - exp_);
        // Floor division by 2^shift for signed values.
        BigInt q = floor_shift(mant_, shift);
        if (up && (q << shift) != mant_) q += 1;
        return Dyadic(q, -p);
    }

    static BigInt floor_shift(const BigInt& m, unsigned shift) {
        if (m.sign() >= 0) return m >> shift;
        BigInt a = -m;
        BigInt q = a >> shift;
        if ((q << shift) != a) q += 1;
        return -q;
    }

    static Dyadic div_round(const Dyadic& a, const Dyadic& b, std::int64_t p, bool up) {
        if (b.is_zero()) throw DivisionByIntervalContainingZero("division by zero");
        if (a.is_zero()) return {};
        // a/b = (ma/mb) * 2^(ea-eb); want integer q ~ (a/b) * 2^p.
        BigInt num = a.mant_;
        BigInt den = b.mant_;
        const std::int64_t shift = a.exp_ - b.exp_ + p;
        if (shift >= 0)
            num <<= static_cast<unsigned>(shift);
        else
            den <<= static_cast<unsigned>(-shift);
        if (den.sign() < 0) {
            den = -den;
            num = -num;
        }
        BigInt q = num / den;  // truncates toward zero
        BigInt r = num - q * den;
        if (!r.is_zero()) {
            if (num.sign() < 0 && !up) q -= 1;
            if (num.sign() > 0 && up) q += 1;
        }
        return Dyadic(q, -p);
    }

    double to_double_dir(bool up) const {
        if (is_zero()) return 0.0;
        const std::int64_t bits = static_cast<std::int64_t>(boost::multiprecision::msb(abs_mant())) + 1;
        if (bits <= 53)
            return std::ldexp(static_cast<double>(static_cast<std::int64_t>(mant_)), static_cast<int>(exp_));
        const auto shift = static_cast<unsigned>(bits - 53);
        BigInt q = floor_shift(mant_, shift);
        if (up && (q << shift) != mant_) q += 1;
        return std::ldexp(static_cast<double>(static_cast<std::int64_t>(q)),
                          static_cast<int>(exp_ + static_cast<std::int64_t>(shift)));
    }

    BigInt mant_{0};
    std::int64_t exp_{0};
};

inline Dyadic abs(const Dyadic& d) { return d.sign() < 0 ? -d : d; }
inline const Dyadic& min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
inline const Dyadic& max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

inline std::ostream& operator<<(std::ostream& os, const Dyadic& d) {
    return os << d.to_exact_string();
}

inline std::string Dyadic::to_decimal(int digits, bool up) const {
    // floor/ceil(value * 10^digits) as an integer, then place the point.
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Dyadic scaled = *this * Dyadic(scale, 0);
    BigInt q = up ? scaled.ceil_int() : scaled.floor_int();
    const bool neg = q.sign() < 0;
    if (neg) q = -q;
    std::string s = q.str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits))
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    if (neg) s.insert(0, "-");
    return s;
}

inline Dyadic Dyadic::parse(std::string_view s) {
    auto fail = [&] { return InvalidArgument("not a dyadic number: '" + std::string(s) + "'"); };
    if (s.empty()) throw fail();
    auto parse_int = [&](std::string_view t) {
        if (t.empty()) throw fail();
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw fail();
        for (std::size_t k = i; k < t.size(); ++k)
            if (t[k] < '0' || t[k] > '9') throw fail();
        // Leading zeros would select octal in the BigInt string constructor.
        std::string digits(t.substr(i));
        const auto nz = digits.find_first_not_of('0');
        digits = nz == std::string::npos ? "0" : digits.substr(nz);
        BigInt v(digits);
        return t[0] == '-' ? BigInt(-v) : v;
    };
    if (auto star = s.find("*2^"); star != std::string_view::npos) {
        BigInt m = parse_int(s.substr(0, star));
        BigInt e = parse_int(s.substr(star + 3));
        return Dyadic(m, static_cast<std::int64_t>(e));
    }
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_int(s.substr(0, slash));
        BigInt den = parse_int(s.substr(slash + 1));
        if (den.sign() <= 0) throw fail();
        const auto k = boost::multiprecision::msb(den);
        if ((BigInt(1) << k) != den) throw fail();
        return Dyadic(num, -static_cast<std::int64_t>(k));
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
        const auto frac = s.size() - dot - 1;
        BigInt num = parse_int(digits);
        BigInt den = 1;
        for (std::size_t i = 0; i < frac; ++i) den *= 10;
        // num / 10^frac is dyadic iff 5^frac divides num.
        BigInt five = 1;
        for (std::size_t i = 0; i < frac; ++i) five *= 5;
        if (num % five != 0) throw fail();
        return Dyadic(num / five, -static_cast<std::int64_t>(frac));
    }
    return Dyadic(parse_int(s), 0);
}

}  // namespace haar
