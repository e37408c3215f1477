#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <variant>
#include <vector>

#include "haar/exactreal/interval.hpp"
#include "haar/group/quaternion.hpp"

namespace haar {

struct Element;

/// Index into the element table of a finite group.
struct FiniteIndex {
    int index = 0;
};

/// Point of R^d / Z^d, each coordinate a dyadic in [0, 1).
struct TorusPoint {
    std::vector<Dyadic> coords;
};

/// Interval enclosure of a unit quaternion.
struct Versor {
    Quat<Interval> q;
};

struct PairElement {
    std::shared_ptr<const Element> first;
    std::shared_ptr<const Element> second;
};

struct SignedElement {
    std::shared_ptr<const Element> base;
    int sign = 1;
};

struct Element : std::variant<FiniteIndex, TorusPoint, Versor, PairElement, SignedElement> {
    using variant::variant;

    const variant& base() const { return *this; }

    template <class T>
    const T& as() const {
        return std::get<T>(base());
    }
    template <class T>
    bool is() const {
        return std::holds_alternative<T>(base());
    }
};

inline Element make_pair_element(Element a, Element b) {
    return PairElement{std::make_shared<const Element>(std::move(a)),
                       std::make_shared<const Element>(std::move(b))};
}

inline Element make_signed_element(Element a, int sign) {
    return SignedElement{std::make_shared<const Element>(std::move(a)), sign};
}

inline Element circle_point(const Dyadic& t) { return TorusPoint{{t}}; }

inline Element versor(const Interval& w, const Interval& x, const Interval& y, const Interval& z) {
    return Versor{{w, x, y, z}};
}

inline std::ostream& operator<<(std::ostream& os, const Element& e) {
    std::visit(
        [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, FiniteIndex>) {
                os << v.index;
            } else if constexpr (std::is_same_v<V, TorusPoint>) {
                for (std::size_t i = 0; i < v.coords.size(); ++i)
                    os << (i ? " " : "") << v.coords[i].to_exact_string();
            } else if constexpr (std::is_same_v<V, Versor>) {
                os << v.q.w.mid() << ' ' << v.q.x.mid() << ' ' << v.q.y.mid() << ' ' << v.q.z.mid();
            } else if constexpr (std::is_same_v<V, PairElement>) {
                os << *v.first << " | " << *v.second;
            } else {
                os << *v.base << " | " << v.sign;
            }
        },
        e.base());
    return os;
}

}  // namespace haar
