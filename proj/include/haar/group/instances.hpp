#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "haar/errors.hpp"
#include "haar/exactreal/elementary.hpp"
#include "haar/group/group.hpp"
#include "haar/quadrature/psi.hpp"

namespace haar {

using CayleyTable = std::vector<std::vector<int>>;

// ---- helpers -------------------------------------------------------------

/// x mod 1, in [0, 1).
inline Dyadic wrap_unit(const Dyadic& x) {
    if (Dyadic(0) <= x && x < Dyadic(1)) return x;
    return x - Dyadic(x.floor_int(), 0);
}

/// Distance on R/Z between representatives in [0, 1).
inline Dyadic circle_distance(const Dyadic& a, const Dyadic& b) {
    const Dyadic d = abs(a - b);
    return min(d, Dyadic(1) - d);
}

/// Inverse of the Cantor pairing.
inline std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t i) {
    auto w = static_cast<std::uint64_t>((std::sqrt(8.0L * static_cast<long double>(i) + 1.0L) - 1.0L) / 2.0L);
    while (w * (w + 1) / 2 > i) --w;
    while ((w + 1) * (w + 2) / 2 <= i) ++w;
    const std::uint64_t y = i - w * (w + 1) / 2;
    return {w - y, y};
}

/// The circle's dense sequence: 0, 1/2, 1/4, 3/4, 1/8, 3/8, ...
inline Dyadic circle_dense(std::uint64_t i) {
    if (i == 0) return {};
    int k = 0;
    while ((std::uint64_t{1} << (k + 1)) <= i) ++k;
    const std::uint64_t j = i - (std::uint64_t{1} << k);
    return Dyadic(BigInt(2 * j + 1), -(k + 1));
}

/// Level and triple of the su2 dense sequence: level l holds the 8^l
/// triples (a, b, c) in [0, 2^l)^3.
inline std::array<std::uint64_t, 4> su2_dense_triple(std::uint64_t i) {
    std::uint64_t level = 0, count = 1;
    while (i >= count && level < 20) {
        i -= count;
        ++level;
        count <<= 3;
    }
    const std::uint64_t mask = (std::uint64_t{1} << level) - 1;
    return {level, i & mask, (i >> level) & mask, (i >> (2 * level)) & mask};
}

inline constexpr std::int64_t kDenseResolution = 64;

inline Element su2_dense(std::uint64_t i) {
    const auto t = su2_dense_triple(i);
    return psi(dyadic_param_point(t[1], t[2], t[3], static_cast<int>(t[0]), kDenseResolution), kDenseResolution);
}

inline Element versor_product(const Element& a, const Element& b, std::int64_t p) {
    const Quat<Interval> q = a.as<Versor>().q * b.as<Versor>().q;
    return Versor{q.map([&](const Interval& c) { return c.round_out(p + 4); })};
}

inline Element versor_inverse(const Element& a) { return Versor{a.as<Versor>().q.conj()}; }

inline Element versor_identity() { return versor(1, 0, 0, 0); }

/// Upper bound for the number of su2 parameter cells needed so that every
/// cell lies in a geodesic ball of radius eps around its centre. A cell of
/// side h in each coordinate has radius <= sqrt(3) h / 2 since the metric
/// d eta^2 + sin^2 eta (d theta^2 + sin^2 theta d phi^2) is dominated by the
/// Euclidean one.
inline std::uint64_t su2_net_side(const Dyadic& eps) {
    // sqrt(3) pi <= 2786/512; side M with pi / M steps: sqrt(3) pi / (2M) <= eps.
    const Dyadic c(BigInt(2786), -9);
    return static_cast<std::uint64_t>(Dyadic::div_ceil(c, eps.ldexp(1), 0).ceil_int());
}

// ---- finite groups -------------------------------------------------------

inline void validate_cayley(const CayleyTable& t) {
    const std::size_t k = t.size();
    if (k == 0) throw InvalidCayleyTable("empty table");
    for (const auto& row : t) {
        if (row.size() != k) throw InvalidCayleyTable("table is not square");
        for (int v : row)
            if (v < 0 || static_cast<std::size_t>(v) >= k) throw InvalidCayleyTable("entry out of range");
    }
    for (std::size_t i = 0; i < k; ++i)
        if (t[0][i] != static_cast<int>(i) || t[i][0] != static_cast<int>(i))
            throw InvalidCayleyTable("row/column 0 is not the identity");
    for (std::size_t a = 0; a < k; ++a) {
        bool has_inverse = false;
        for (std::size_t b = 0; b < k; ++b)
            if (t[a][b] == 0 && t[b][a] == 0) has_inverse = true;
        if (!has_inverse) throw InvalidCayleyTable("element " + std::to_string(a) + " has no inverse");
    }
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            for (std::size_t c = 0; c < k; ++c)
                if (t[static_cast<std::size_t>(t[a][b])][c] != t[a][static_cast<std::size_t>(t[b][c])])
                    throw InvalidCayleyTable("not associative at (" + std::to_string(a) + ", " +
                                             std::to_string(b) + ", " + std::to_string(c) + ")");
}

/// Reads `k` followed by k rows of k indices.
inline CayleyTable parse_cayley(std::istream& in) {
    long long k = 0;
    if (!(in >> k) || k <= 0 || k > 4096) throw InvalidCayleyTable("missing or invalid order");
    CayleyTable t(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k)));
    for (auto& row : t)
        for (int& v : row)
            if (!(in >> v)) throw InvalidCayleyTable("truncated table");
    std::string extra;
    if (in >> extra) throw InvalidCayleyTable("trailing data after table");
    validate_cayley(t);
    return t;
}

inline CayleyTable cyclic_table(int k) {
    if (k <= 0) throw InvalidArgument("cyclic order must be positive");
    CayleyTable t(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k)));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % k;
    return t;
}

inline Group make_finite_group(CayleyTable table, std::string name = "finite") {
    validate_cayley(table);
    Group g;
    g.kind = GroupKind::finite;
    g.name = std::move(name);
    auto t = std::make_shared<const CayleyTable>(table);
    const auto k = static_cast<int>(table.size());
    g.table = std::move(table);
    g.metric = [](const Element& a, const Element& b, std::int64_t) {
        return Interval(a.as<FiniteIndex>().index == b.as<FiniteIndex>().index ? 0 : 1);
    };
    g.op = [t](const Element& a, const Element& b, std::int64_t) -> Element {
        return FiniteIndex{(*t)[static_cast<std::size_t>(a.as<FiniteIndex>().index)]
                               [static_cast<std::size_t>(b.as<FiniteIndex>().index)]};
    };
    g.inverse = [t, k](const Element& a, std::int64_t) -> Element {
        const auto i = static_cast<std::size_t>(a.as<FiniteIndex>().index);
        for (int b = 0; b < k; ++b)
            if ((*t)[i][static_cast<std::size_t>(b)] == 0) return FiniteIndex{b};
        throw InvalidCayleyTable("no inverse");
    };
    g.identity = FiniteIndex{0};
    g.dense = [k](std::uint64_t i) -> Element { return FiniteIndex{static_cast<int>(i % static_cast<std::uint64_t>(k))}; };
    g.diameter_bound = Dyadic(1);
    g.kappa = [k](std::int64_t n) -> std::int64_t { return n >= 1 ? k : 1; };
    auto all = [k] {
        std::vector<Element> v;
        for (int i = 0; i < k; ++i) v.emplace_back(FiniteIndex{i});
        return v;
    };
    g.separated_seed = [all](const Dyadic& delta) {
        return delta < Dyadic(1) ? all() : std::vector<Element>{FiniteIndex{0}};
    };
    g.separation_upper = [k](const Dyadic& delta) -> std::int64_t { return delta < Dyadic(1) ? k : 1; };
    g.net = [all](const Dyadic&, std::size_t) { return all(); };
    return g;
}

// ---- circle and tori -----------------------------------------------------

/// Largest m with m * delta < 1, at least 1: no delta-separated set on the
/// circle is larger, since its cyclic gaps are each > delta and sum to 1.
inline std::int64_t circle_separation_upper(const Dyadic& delta) {
    if (delta.sign() <= 0) throw InvalidArgument("separation radius must be positive");
    const BigInt m = Dyadic::div_ceil(Dyadic(1), delta, 0).ceil_int() - 1;
    if (m > BigInt(std::int64_t{1} << 62)) throw EffortExceeded("separation bound too large");
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(m));
}

/// k * s for k < m where s = delta + 2^-j is the coarsest step that keeps
/// the wrap-around gap 1 - (m - 1) s above delta too.
inline std::vector<Dyadic> circle_separated_points(const Dyadic& delta, std::size_t cap = std::size_t{1} << 22) {
    const std::int64_t m = circle_separation_upper(delta);
    if (static_cast<std::uint64_t>(m) > cap) throw EffortExceeded("separated set larger than the cap");
    if (m == 1) return {Dyadic(0)};
    Dyadic step;
    for (std::int64_t j = 1;; ++j) {
        step = delta + Dyadic::pow2(-j);
        if (Dyadic(m - 1) * step < Dyadic(1) - delta) break;
    }
    std::vector<Dyadic> pts;
    pts.reserve(static_cast<std::size_t>(m));
    for (std::int64_t k = 0; k < m; ++k) pts.push_back(step * Dyadic(k));
    return pts;
}

/// Step of the circle packing produced by circle_separated_points(delta).
inline Dyadic circle_separated_step(const Dyadic& delta) {
    const std::int64_t m = circle_separation_upper(delta);
    if (m == 1) return Dyadic(1);
    for (std::int64_t j = 1;; ++j) {
        const Dyadic step = delta + Dyadic::pow2(-j);
        if (Dyadic(m - 1) * step < Dyadic(1) - delta) return step;
    }
}

inline Group make_torus_group(int d) {
    if (d < 1) throw InvalidArgument("torus dimension must be positive");
    Group g;
    g.kind = d == 1 ? GroupKind::circle : GroupKind::torus;
    g.name = d == 1 ? "circle" : "torus:" + std::to_string(d);
    g.dim = d;
    g.metric = [](const Element& a, const Element& b, std::int64_t) {
        const auto& x = a.as<TorusPoint>().coords;
        const auto& y = b.as<TorusPoint>().coords;
        Dyadic m;
        for (std::size_t i = 0; i < x.size(); ++i) m = max(m, circle_distance(x[i], y[i]));
        return Interval(m);
    };
    g.op = [](const Element& a, const Element& b, std::int64_t) -> Element {
        const auto& x = a.as<TorusPoint>().coords;
        const auto& y = b.as<TorusPoint>().coords;
        TorusPoint r;
        for (std::size_t i = 0; i < x.size(); ++i) r.coords.push_back(wrap_unit(x[i] + y[i]));
        return r;
    };
    g.inverse = [](const Element& a, std::int64_t) -> Element {
        TorusPoint r;
        for (const auto& c : a.as<TorusPoint>().coords) r.coords.push_back(wrap_unit(-c));
        return r;
    };
    g.identity = TorusPoint{std::vector<Dyadic>(static_cast<std::size_t>(d))};
    g.dense = [d](std::uint64_t i) -> Element {
        TorusPoint r;
        for (int c = 0; c + 1 < d; ++c) {
            auto [x, y] = cantor_unpair(i);
            r.coords.push_back(circle_dense(x));
            i = y;
        }
        r.coords.push_back(circle_dense(i));
        return r;
    };
    g.diameter_bound = Dyadic::pow2(-1);
    if (d == 1) {
        g.kappa = [](std::int64_t n) -> std::int64_t {
            if (n <= 1) return 1;
            if (n > 62) throw EffortExceeded("packing size overflows 64 bits");
            return (std::int64_t{1} << n) - 1;
        };
    }
    g.separated_seed = [d](const Dyadic& delta) {
        const auto pts = circle_separated_points(delta);
        std::size_t total = 1;
        for (int c = 0; c < d; ++c) {
            total *= pts.size();
            if (total > (std::size_t{1} << 22)) throw EffortExceeded("separated set larger than the cap");
        }
        std::vector<Element> out;
        for (std::size_t idx = 0; idx < total; ++idx) {
            TorusPoint p;
            std::size_t rest = idx;
            for (int c = 0; c < d; ++c) {
                p.coords.push_back(pts[rest % pts.size()]);
                rest /= pts.size();
            }
            out.emplace_back(std::move(p));
        }
        return out;
    };
    g.separation_upper = [d](const Dyadic& delta) -> std::int64_t {
        if (d == 1) return circle_separation_upper(delta);
        // Grid of N^d cells of side 1/N has covering radius 1/(2N) <= delta/2.
        const BigInt n = Dyadic::div_ceil(Dyadic(1), delta, 0).ceil_int();
        BigInt total = 1;
        for (int c = 0; c < d; ++c) total *= n;
        if (total > BigInt(std::int64_t{1} << 62)) throw EffortExceeded("separation bound too large");
        return static_cast<std::int64_t>(total);
    };
    g.net = [d](const Dyadic& eps, std::size_t cap) {
        // 2^k points per axis, covering radius 2^-(k+1) <= eps.
        int k = 0;
        while (eps < Dyadic::pow2(-(k + 1))) ++k;
        const std::size_t side = std::size_t{1} << k;
        std::size_t total = 1;
        for (int c = 0; c < d; ++c) {
            total *= side;
            if (total > cap) throw EffortExceeded("net exceeds the size cap");
        }
        std::vector<Element> out;
        for (std::size_t idx = 0; idx < total; ++idx) {
            TorusPoint p;
            std::size_t rest = idx;
            for (int c = 0; c < d; ++c) {
                p.coords.push_back(Dyadic(BigInt(rest % side), -k));
                rest /= side;
            }
            out.emplace_back(std::move(p));
        }
        return out;
    };
    return g;
}

inline Group make_circle_group() { return make_torus_group(1); }

// ---- versors -------------------------------------------------------------

inline std::vector<Element> su2_net(const Dyadic& eps, std::size_t cap) {
    const std::uint64_t m = su2_net_side(eps);
    if (2 * m * m * m > cap) throw EffortExceeded("su2 net exceeds the size cap");
    std::vector<Element> out;
    const std::int64_t wp = kDenseResolution;
    const Interval pi = pi_raw(wp + 4);
    for (std::uint64_t a = 0; a < m; ++a)
        for (std::uint64_t b = 0; b < m; ++b)
            for (std::uint64_t c = 0; c < 2 * m; ++c) {
                auto centre = [&](std::uint64_t i) {
                    return div(pi * Interval(Dyadic(BigInt(2 * i + 1), -1)), Interval(Dyadic(BigInt(m), 0)), wp + 4);
                };
                out.push_back(psi({centre(a), centre(b), centre(c)}, wp));
            }
    return out;
}

inline Group make_su2_group() {
    Group g;
    g.kind = GroupKind::su2;
    g.name = "su2";
    g.metric = [](const Element& a, const Element& b, std::int64_t p) {
        const Interval c = intersect(dot(a.as<Versor>().q, b.as<Versor>().q), Interval(-1, 1));
        return arccos_enclosure(c, p);
    };
    g.op = versor_product;
    g.inverse = [](const Element& a, std::int64_t) { return versor_inverse(a); };
    g.identity = versor_identity();
    g.dense = su2_dense;
    g.diameter_bound = Dyadic(BigInt(13), -2);
    g.separation_upper = [](const Dyadic& delta) -> std::int64_t {
        const std::uint64_t m = su2_net_side(delta.ldexp(-1));
        return static_cast<std::int64_t>(2 * m * m * m);
    };
    g.net = su2_net;
    return g;
}

/// SO(3) as versors modulo sign, with the quotient metric arccos |<p, q>|.
inline Group make_so3_group() {
    Group g = make_su2_group();
    g.kind = GroupKind::so3;
    g.name = "so3";
    g.metric = [](const Element& a, const Element& b, std::int64_t p) {
        const Interval c = intersect(abs(dot(a.as<Versor>().q, b.as<Versor>().q)), Interval(0, 1));
        return arccos_enclosure(c, p);
    };
    g.diameter_bound = Dyadic(BigInt(13), -3);
    return g;
}

// ---- combinators ---------------------------------------------------------

/// G x {+1, -1} with the max of G's metric and the discrete one.
inline Group make_signed_group(const Group& base, GroupKind kind, std::string name) {
    auto b = std::make_shared<const Group>(base);
    Group g;
    g.kind = kind;
    g.name = std::move(name);
    g.metric = [b](const Element& x, const Element& y, std::int64_t p) {
        const auto& sx = x.as<SignedElement>();
        const auto& sy = y.as<SignedElement>();
        const Interval d = b->metric(*sx.base, *sy.base, p);
        if (sx.sign == sy.sign) return d;
        return Interval(max(d.lo(), Dyadic(1)), max(d.hi(), Dyadic(1)));
    };
    g.op = [b](const Element& x, const Element& y, std::int64_t p) {
        const auto& sx = x.as<SignedElement>();
        const auto& sy = y.as<SignedElement>();
        return make_signed_element(b->op(*sx.base, *sy.base, p), sx.sign * sy.sign);
    };
    g.inverse = [b](const Element& x, std::int64_t p) {
        const auto& sx = x.as<SignedElement>();
        return make_signed_element(b->inverse(*sx.base, p), sx.sign);
    };
    g.identity = make_signed_element(base.identity, 1);
    g.dense = [b](std::uint64_t i) { return make_signed_element(b->dense(i / 2), i % 2 == 0 ? 1 : -1); };
    g.diameter_bound = max(base.diameter_bound, Dyadic(1));
    if (base.separation_upper)
        g.separation_upper = [b](const Dyadic& delta) { return 2 * b->separation_upper(delta); };
    if (base.net)
        g.net = [b](const Dyadic& eps, std::size_t cap) {
            std::vector<Element> out;
            for (const auto& e : b->net(eps, cap / 2)) {
                out.push_back(make_signed_element(e, 1));
                out.push_back(make_signed_element(e, -1));
            }
            return out;
        };
    return g;
}

/// A x B with the max metric.
inline Group make_product_group(const Group& first, const Group& second, GroupKind kind, std::string name) {
    auto a = std::make_shared<const Group>(first);
    auto c = std::make_shared<const Group>(second);
    Group g;
    g.kind = kind;
    g.name = std::move(name);
    g.metric = [a, c](const Element& x, const Element& y, std::int64_t p) {
        const auto& px = x.as<PairElement>();
        const auto& py = y.as<PairElement>();
        const Interval d1 = a->metric(*px.first, *py.first, p);
        const Interval d2 = c->metric(*px.second, *py.second, p);
        return Interval(max(d1.lo(), d2.lo()), max(d1.hi(), d2.hi()));
    };
    g.op = [a, c](const Element& x, const Element& y, std::int64_t p) {
        const auto& px = x.as<PairElement>();
        const auto& py = y.as<PairElement>();
        return make_pair_element(a->op(*px.first, *py.first, p), c->op(*px.second, *py.second, p));
    };
    g.inverse = [a, c](const Element& x, std::int64_t p) {
        const auto& px = x.as<PairElement>();
        return make_pair_element(a->inverse(*px.first, p), c->inverse(*px.second, p));
    };
    g.identity = make_pair_element(first.identity, second.identity);
    g.dense = [a, c](std::uint64_t i) {
        auto [x, y] = cantor_unpair(i);
        return make_pair_element(a->dense(x), c->dense(y));
    };
    g.diameter_bound = max(first.diameter_bound, second.diameter_bound);
    if (first.net && second.net) {
        g.net = [a, c](const Dyadic& eps, std::size_t cap) {
            const auto na = a->net(eps, cap);
            const auto nc = c->net(eps, cap);
            if (na.size() * nc.size() > cap) throw EffortExceeded("net exceeds the size cap");
            std::vector<Element> out;
            for (const auto& x : na)
                for (const auto& y : nc) out.push_back(make_pair_element(x, y));
            return out;
        };
        g.separation_upper = [a, c](const Dyadic& delta) -> std::int64_t {
            // Each factor's net of radius delta/2 gives a product net.
            auto count = [&](const Group& h) -> std::int64_t {
                if (h.kind == GroupKind::circle)
                    return static_cast<std::int64_t>(Dyadic::div_ceil(Dyadic(1), delta, 0).ceil_int());
                return h.separation_upper(delta);
            };
            return count(*a) * count(*c);
        };
    }
    return g;
}

inline Group make_o3_group() { return make_signed_group(make_so3_group(), GroupKind::o3, "o3"); }

inline Group make_u2_group() {
    return make_product_group(make_su2_group(), make_circle_group(), GroupKind::u2, "u2");
}

// ---- construction from a textual spec ------------------------------------

/// `finite` (needs a Cayley table), `cyclic:k`, `circle`, `torus:d`,
/// `su2`, `so3`, `o3`, `u2`.
inline Group make_group(const std::string& spec, const CayleyTable* cayley = nullptr) {
    auto suffix_int = [&](std::size_t at) {
        const std::string rest = spec.substr(at);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(rest, &used);
        } catch (const std::exception&) {
            throw InvalidArgument("bad group spec '" + spec + "'");
        }
        if (used != rest.size() || v <= 0) throw InvalidArgument("bad group spec '" + spec + "'");
        return v;
    };
    if (spec == "finite") {
        if (!cayley) throw InvalidArgument("group 'finite' needs a Cayley table");
        return make_finite_group(*cayley);
    }
    if (spec.rfind("cyclic:", 0) == 0) {
        const int k = suffix_int(7);
        return make_finite_group(cyclic_table(k), "cyclic:" + std::to_string(k));
    }
    if (spec == "circle") return make_circle_group();
    if (spec.rfind("torus:", 0) == 0) return make_torus_group(suffix_int(6));
    if (spec == "su2") return make_su2_group();
    if (spec == "so3") return make_so3_group();
    if (spec == "o3") return make_o3_group();
    if (spec == "u2") return make_u2_group();
    throw InvalidArgument("unknown group '" + spec + "'");
}

}  // namespace haar
