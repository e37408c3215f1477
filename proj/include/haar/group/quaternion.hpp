#pragma once

#include <array>
#include <ostream>

namespace haar {

/// Quaternion w + x i + y j + z k over any ring-like scalar (Interval,
/// FInterval, double).
template <class T>
struct Quat {
    T w{}, x{}, y{}, z{};

    friend Quat operator*(const Quat& a, const Quat& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }
    friend Quat operator-(const Quat& a) { return {-a.w, -a.x, -a.y, -a.z}; }
    Quat conj() const { return {w, -x, -y, -z}; }
    friend T dot(const Quat& a, const Quat& b) { return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z; }
    T norm2() const { return sqr(w) + sqr(x) + sqr(y) + sqr(z); }

    template <class F>
    auto map(F f) const {
        return Quat<decltype(f(w))>{f(w), f(x), f(y), f(z)};
    }
};

template <class T>
std::ostream& operator<<(std::ostream& os, const Quat<T>& q) {
    return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
}

/// 3x3 matrix.
template <class T>
using Mat3 = std::array<std::array<T, 3>, 3>;

/// Rotation v -> q v q^-1 of a unit quaternion as a matrix.
template <class T>
Mat3<T> rotation_matrix(const Quat<T>& q) {
    const T ww = q.w * q.w, xx = q.x * q.x, yy = q.y * q.y, zz = q.z * q.z;
    const T wx = q.w * q.x, wy = q.w * q.y, wz = q.w * q.z;
    const T xy = q.x * q.y, xz = q.x * q.z, yz = q.y * q.z;
    const T two = T(2);
    return {{{ww + xx - yy - zz, two * (xy - wz), two * (xz + wy)},
             {two * (xy + wz), ww - xx + yy - zz, two * (yz - wx)},
             {two * (xz - wy), two * (yz + wx), ww - xx - yy + zz}}};
}

}  // namespace haar
