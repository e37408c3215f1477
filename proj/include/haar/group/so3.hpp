#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "haar/exactreal/elementary.hpp"
#include "haar/group/element.hpp"
#include "haar/group/quaternion.hpp"

namespace haar {

/// Rotation matrix of the versor q, i.e. v -> q v q^-1 on the imaginary
/// quaternions. q and -q give the same matrix.
inline Mat3<Interval> so3_from_versor(const Versor& v, std::int64_t p) {
    Mat3<Interval> m = rotation_matrix(v.q);
    for (auto& row : m)
        for (auto& e : row) e = intersect(e, Interval(-1, 1)).round_out(p + 2);
    return m;
}

inline Interval trace(const Mat3<Interval>& m) { return m[0][0] + m[1][1] + m[2][2]; }

inline Interval determinant(const Mat3<Interval>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Complex number as (re, im).
using ComplexInterval = std::pair<Interval, Interval>;

/// The 2x2 unitary matrix z * [[a + bi, c + di], [-c + di, a - bi]] of a
/// U(2) element given as a versor a + bi + cj + dk and a circle point t
/// with z = exp(2 pi i t).
inline std::array<std::array<ComplexInterval, 2>, 2> u2_matrix(const Versor& v, const Dyadic& t, std::int64_t p) {
    const auto [s, c] = sin_cos_enclosure(pi_raw(p + 8).ldexp(1) * Interval(t), p + 4);
    auto mul = [&](const Interval& re, const Interval& im) {
        return ComplexInterval{(c * re - s * im).round_out(p + 2), (s * re + c * im).round_out(p + 2)};
    };
    const auto& q = v.q;
    return {{{mul(q.w, q.x), mul(q.y, q.z)}, {mul(-q.y, q.z), mul(q.w, -q.x)}}};
}

}  // namespace haar
