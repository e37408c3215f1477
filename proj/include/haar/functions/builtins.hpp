#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "haar/errors.hpp"
#include "haar/exactreal/elementary.hpp"
#include "haar/exactreal/pi.hpp"
#include "haar/group/group.hpp"
#include "haar/quadrature/integrand.hpp"
#include "haar/quadrature/lift.hpp"

namespace haar {

namespace detail {

// 2 pi, rounded up: a Lipschitz constant for cos(2 pi t), cos^2(2 pi t) etc.
inline Dyadic two_pi_up() { return Dyadic(1610, -8); }

inline const Quat<Interval>& versor_part(const Element& e) {
    if (e.is<Versor>()) return e.as<Versor>().q;
    if (e.is<SignedElement>()) return versor_part(*e.as<SignedElement>().base);
    if (e.is<PairElement>()) return versor_part(*e.as<PairElement>().first);
    throw InvalidArgument("element has no quaternion part");
}

inline const Dyadic& circle_part(const Element& e) {
    if (e.is<TorusPoint>()) return e.as<TorusPoint>().coords.at(0);
    if (e.is<PairElement>()) return circle_part(*e.as<PairElement>().second);
    throw InvalidArgument("element has no circle part");
}

inline std::pair<Interval, Interval> circle_re_im(const Dyadic& t, std::int64_t p) {
    const Interval x = pi_raw(p + 8) * Interval(t.ldexp(1));
    auto [s, c] = sin_cos_enclosure(x, p + 4);
    return {c, s};
}

// A function of the circle point (re, im), usable on the circle, on U(2)
// through its circle factor and on SU(2) through the lift.
template <class F>
IntegrandSpec circle_builtin(F poly, Dyadic lipschitz, Dyadic bound) {
    IntegrandSpec s;
    s.lipschitz = lipschitz;
    s.bound = bound;
    s.fast = [poly](const FastPoint& p) { return poly(p.re, p.im); };
    s.eval = [poly](const Element& e, std::int64_t p) {
        auto [re, im] = circle_re_im(circle_part(e), p);
        return poly(re, im);
    };
    return s;
}

template <class F>
IntegrandSpec versor_builtin(F poly, Dyadic lipschitz, Dyadic bound) {
    IntegrandSpec s;
    s.lipschitz = lipschitz;
    s.bound = bound;
    s.fast = [poly](const FastPoint& p) { return poly(p.q); };
    s.eval = [poly](const Element& e, std::int64_t) { return poly(versor_part(e)); };
    return s;
}

inline IntegrandSpec constant_builtin() {
    IntegrandSpec s;
    s.lipschitz = Dyadic(0);
    s.bound = Dyadic(1);
    s.fast = [](const FastPoint&) { return FInterval(1.0); };
    s.eval = [](const Element&, std::int64_t) { return Interval(1); };
    return s;
}

inline IntegrandSpec circle_named(const std::string& name) {
    const Dyadic l = two_pi_up();
    if (name == "re") return circle_builtin([](const auto& re, const auto&) { return re; }, l, Dyadic(1));
    if (name == "im") return circle_builtin([](const auto&, const auto& im) { return im; }, l, Dyadic(1));
    if (name == "re2") return circle_builtin([](const auto& re, const auto&) { return sqr(re); }, l, Dyadic(1));
    if (name == "im2") return circle_builtin([](const auto&, const auto& im) { return sqr(im); }, l, Dyadic(1));
    if (name == "abs-re") return circle_builtin([](const auto& re, const auto&) { return abs(re); }, l, Dyadic(1));
    if (name == "one") return constant_builtin();
    throw InvalidArgument("unknown circle function '" + name + "'");
}

inline IntegrandSpec versor_named(const std::string& name) {
    if (name == "abs-sum")
        return versor_builtin([](const auto& q) { return abs(q.w) + abs(q.x) + abs(q.y) + abs(q.z); }, Dyadic(2),
                              Dyadic(2));
    if (name == "w2") return versor_builtin([](const auto& q) { return sqr(q.w); }, Dyadic(2), Dyadic(1));
    if (name == "trace")
        return versor_builtin(
            [](const auto& q) {
                using T = std::decay_t<decltype(q.w)>;
                return T(4) * sqr(q.w) - T(1);
            },
            Dyadic(8), Dyadic(3));
    throw InvalidArgument("unknown quaternion function '" + name + "'");
}

}  // namespace detail

/// Circle functions, in the parameter t of exp(2 pi i t); Lipschitz
/// constants refer to the metric of R/Z.
inline const std::vector<std::string>& circle_builtin_names() {
    static const std::vector<std::string> v{"one", "re", "im", "re2", "im2", "abs-re"};
    return v;
}

/// f(k) = k on a finite group of order `order`; Lipschitz k - 1 for the
/// discrete metric.
inline IntegrandSpec index_function(int order) {
    IntegrandSpec s;
    s.lipschitz = Dyadic(std::max(order - 1, 0));
    s.bound = Dyadic(std::max(order - 1, 1));
    s.eval = [](const Element& e, std::int64_t) { return Interval(e.as<FiniteIndex>().index); };
    return s;
}

/// f(k) = values[k] on a finite group.
inline IntegrandSpec table_function(std::vector<Dyadic> values) {
    if (values.empty()) throw InvalidArgument("empty value table");
    Dyadic m(0), lo = values[0], hi = values[0];
    for (const auto& v : values) {
        m = max(m, abs(v));
        lo = min(lo, v);
        hi = max(hi, v);
    }
    IntegrandSpec s;
    s.lipschitz = hi - lo;
    s.bound = max(m, Dyadic(1));
    s.eval = [vals = std::move(values)](const Element& e, std::int64_t) {
        return Interval(vals.at(static_cast<std::size_t>(e.as<FiniteIndex>().index)));
    };
    return s;
}

/// Whitespace-separated decimal values, one per element in index order.
inline std::vector<Dyadic> parse_values(std::istream& in) {
    std::vector<Dyadic> v;
    std::string tok;
    while (in >> tok) v.push_back(Dyadic::parse(tok));
    return v;
}

/// Builtin integrand `name` on group g: one, abs-sum, re, im, re2, im2,
/// abs-re, w2, trace, sign, index and lift:<circle function>.
inline IntegrandSpec make_builtin(const Group& g, const std::string& name) {
    if (name == "one") return detail::constant_builtin();
    auto unknown = [&] { return InvalidArgument("function '" + name + "' is not defined on " + g.name); };
    switch (g.kind) {
        case GroupKind::finite:
            if (name == "index") return index_function(static_cast<int>(g.order()));
            throw unknown();
        case GroupKind::circle: return detail::circle_named(name);
        case GroupKind::su2:
            if (name.rfind("lift:", 0) == 0) return lift_circle_function(detail::circle_named(name.substr(5)));
            return detail::versor_named(name);
        case GroupKind::so3: return detail::versor_named(name);
        case GroupKind::o3:
            if (name == "sign") {
                IntegrandSpec s;
                s.lipschitz = Dyadic(2);
                s.bound = Dyadic(1);
                s.fast = [](const FastPoint& p) { return FInterval(static_cast<double>(p.sign)); };
                s.eval = [](const Element& e, std::int64_t) { return Interval(e.as<SignedElement>().sign); };
                return s;
            }
            return detail::versor_named(name);
        case GroupKind::u2:
            if (name == "abs-sum") return detail::versor_named(name);
            return detail::circle_named(name);
        default: throw unknown();
    }
}

}  // namespace haar
