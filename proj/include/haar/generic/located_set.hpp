#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "haar/errors.hpp"
#include "haar/group/group.hpp"
#include "haar/group/instances.hpp"

namespace haar {

/// Closed subset of a finite group under the discrete metric.
struct FiniteSet {
    std::vector<bool> members;

    bool empty() const { return std::none_of(members.begin(), members.end(), [](bool b) { return b; }); }
    bool full() const { return std::all_of(members.begin(), members.end(), [](bool b) { return b; }); }
    std::size_t count() const { return static_cast<std::size_t>(std::count(members.begin(), members.end(), true)); }
};

/// Closed interval [a, b] with 0 <= a <= b <= 1; 1 is identified with 0.
struct Piece {
    Dyadic a, b;
};

/// Closed subset of the circle as a sorted list of disjoint pieces.
struct ArcSet {
    std::vector<Piece> pieces;

    bool empty() const { return pieces.empty(); }
    bool full() const { return pieces.size() == 1 && pieces[0].a.is_zero() && pieces[0].b == Dyadic(1); }
};

/// Finite union of closed balls in a length space, where
/// d(p, B_r(c)) = max(d(p, c) - r, 0).
struct BallUnion {
    std::vector<std::pair<Element, Dyadic>> balls;
};

namespace detail {

inline std::vector<Piece> normalize_pieces(std::vector<Piece> v) {
    std::sort(v.begin(), v.end(), [](const Piece& x, const Piece& y) { return x.a < y.a || (x.a == y.a && x.b < y.b); });
    std::vector<Piece> out;
    for (auto& p : v) {
        if (!out.empty() && p.a <= out.back().b)
            out.back().b = max(out.back().b, p.b);
        else
            out.push_back(p);
    }
    return out;
}

// Adds the circular interval [lo, hi] (hi - lo < 1, any real lo) as pieces.
inline void add_circular(std::vector<Piece>& v, const Dyadic& lo, const Dyadic& hi) {
    const Dyadic shift(lo.floor_int(), 0);
    const Dyadic a = lo - shift, b = hi - shift;
    if (b <= Dyadic(1)) {
        v.push_back({a, b});
    } else {
        v.push_back({a, Dyadic(1)});
        v.push_back({Dyadic(0), b - Dyadic(1)});
    }
}

// Arcs (lo, hi) with lo in [0, 1): pieces touching 1 and 0 are joined.
inline std::vector<std::pair<Dyadic, Dyadic>> to_arcs(const std::vector<Piece>& pieces) {
    std::vector<std::pair<Dyadic, Dyadic>> arcs;
    for (const auto& p : pieces) arcs.emplace_back(p.a, p.b);
    if (arcs.size() >= 2 && arcs.front().first.is_zero() && arcs.back().second == Dyadic(1)) {
        arcs.back().second = Dyadic(1) + arcs.front().second;
        arcs.erase(arcs.begin());
    }
    return arcs;
}

inline ArcSet full_arcs() { return ArcSet{{{Dyadic(0), Dyadic(1)}}}; }

inline ArcSet arcs_complement_closure(const ArcSet& s) {
    if (s.empty()) return full_arcs();
    if (s.full()) return {};
    std::vector<Piece> out;
    Dyadic cursor(0);
    for (const auto& p : s.pieces) {
        if (cursor < p.a) out.push_back({cursor, p.a});
        cursor = p.b;
    }
    if (cursor < Dyadic(1)) out.push_back({cursor, Dyadic(1)});
    return {normalize_pieces(std::move(out))};
}

inline ArcSet arcs_outer(const ArcSet& s, const Dyadic& r) {
    if (s.empty() || s.full()) return s;
    std::vector<Piece> out;
    for (const auto& [lo, hi] : to_arcs(s.pieces)) {
        if (Dyadic(1) <= hi - lo + r.ldexp(1)) return full_arcs();
        add_circular(out, lo - r, hi + r);
    }
    return {normalize_pieces(std::move(out))};
}

// {x : d(x, complement) >= r}: every arc shrinks by r at both ends.
inline ArcSet arcs_inner(const ArcSet& s, const Dyadic& r) {
    if (s.empty() || s.full()) return s;
    std::vector<Piece> out;
    for (const auto& [lo, hi] : to_arcs(s.pieces)) {
        if (hi - lo < r.ldexp(1)) continue;
        add_circular(out, lo + r, hi - r);
    }
    return {normalize_pieces(std::move(out))};
}

inline ArcSet arcs_intersect(const ArcSet& x, const ArcSet& y) {
    std::vector<Piece> out;
    std::size_t i = 0, j = 0;
    while (i < x.pieces.size() && j < y.pieces.size()) {
        const Dyadic a = max(x.pieces[i].a, y.pieces[j].a);
        const Dyadic b = min(x.pieces[i].b, y.pieces[j].b);
        if (a <= b) out.push_back({a, b});
        if (x.pieces[i].b < y.pieces[j].b)
            ++i;
        else
            ++j;
    }
    return {normalize_pieces(std::move(out))};
}

inline bool arcs_contains(const ArcSet& s, const Dyadic& t) {
    for (const auto& p : s.pieces)
        if (p.a <= t && t <= p.b) return true;
    if (t.is_zero())
        for (const auto& p : s.pieces)
            if (p.b == Dyadic(1)) return true;
    return false;
}

// closure(x \ y): x meets the closed gaps of y; a degenerate piece survives
// only when its point lies outside y.
inline ArcSet arcs_difference_closure(const ArcSet& x, const ArcSet& y) {
    const ArcSet m = arcs_intersect(x, arcs_complement_closure(y));
    std::vector<Piece> out;
    for (const auto& p : m.pieces)
        if (p.a < p.b || !arcs_contains(y, p.a)) out.push_back(p);
    return {std::move(out)};
}

inline Dyadic arcs_distance(const ArcSet& s, const Dyadic& t) {
    Dyadic best(1);
    for (const auto& p : s.pieces) {
        if (p.a <= t && t <= p.b) return {};
        best = min(best, min(circle_distance(t, wrap_unit(p.a)), circle_distance(t, wrap_unit(p.b))));
    }
    return best;
}

}  // namespace detail

/// A closed set together with a certified distance evaluator p -> d(p, S).
///
/// Built from balls by outer/inner thickening, union, intersection,
/// closure of differences and closure of complements. Finite groups (discrete
/// metric) and the circle have exact geometric backends; other groups
/// support balls and unions of balls only.
class LocatedSet {
public:
    using Geometry = std::variant<FiniteSet, ArcSet, BallUnion>;

    LocatedSet(std::shared_ptr<const Group> g, Geometry geom, std::string desc)
        : g_(std::move(g)), geom_(std::move(geom)), desc_(std::move(desc)) {}

    static LocatedSet whole(std::shared_ptr<const Group> g) {
        if (g->is_finite()) return {g, FiniteSet{std::vector<bool>(g->order(), true)}, "X"};
        if (g->kind == GroupKind::circle) return {g, detail::full_arcs(), "X"};
        throw Unsupported("whole space as a located set of " + g->name);
    }

    static LocatedSet empty(std::shared_ptr<const Group> g) {
        if (g->is_finite()) return {g, FiniteSet{std::vector<bool>(g->order(), false)}, "{}"};
        if (g->kind == GroupKind::circle) return {g, ArcSet{}, "{}"};
        return {g, BallUnion{}, "{}"};
    }

    /// The closed ball {x : d(x, c) <= r}.
    static LocatedSet ball(std::shared_ptr<const Group> g, const Element& c, const Dyadic& r) {
        std::ostringstream d;
        d << "ball(" << c << ", " << r << ")";
        if (r.sign() < 0) return {g, empty(g).geom_, d.str()};
        if (g->is_finite()) {
            FiniteSet s{std::vector<bool>(g->order(), Dyadic(1) <= r)};
            s.members[static_cast<std::size_t>(c.as<FiniteIndex>().index)] = true;
            return {g, std::move(s), d.str()};
        }
        if (g->kind == GroupKind::circle) {
            const Dyadic t = c.as<TorusPoint>().coords[0];
            if (Dyadic(1) <= r.ldexp(1)) return {g, detail::full_arcs(), d.str()};
            std::vector<Piece> v;
            detail::add_circular(v, t - r, t + r);
            return {g, ArcSet{detail::normalize_pieces(std::move(v))}, d.str()};
        }
        return {g, BallUnion{{{c, r}}}, d.str()};
    }

    /// Subset of a finite group by membership flags.
    static LocatedSet subset(std::shared_ptr<const Group> g, std::vector<bool> members) {
        if (!g->is_finite() || members.size() != g->order()) throw InvalidArgument("subset needs a finite group");
        std::string d = "{";
        for (std::size_t i = 0; i < members.size(); ++i)
            if (members[i]) d += (d.size() > 1 ? "," : "") + std::to_string(i);
        return {g, FiniteSet{std::move(members)}, d + "}"};
    }

    /// Union of closed circle pieces [a, b], 0 <= a <= b <= 1.
    static LocatedSet pieces(std::shared_ptr<const Group> g, std::vector<Piece> v) {
        if (g->kind != GroupKind::circle) throw InvalidArgument("pieces need the circle");
        return {g, ArcSet{detail::normalize_pieces(std::move(v))}, "arcs"};
    }

    /// B_r(S) = {x : d(x, S) <= r}.
    LocatedSet outer(const Dyadic& r) const {
        std::ostringstream d;
        d << "outer(" << desc_ << ", " << r << ")";
        return {g_, std::visit([&](const auto& s) -> Geometry { return outer_geom(s, r); }, geom_), d.str()};
    }

    /// B_-r(S) = {x : d(x, X \ S) >= r}.
    LocatedSet inner(const Dyadic& r) const {
        std::ostringstream d;
        d << "inner(" << desc_ << ", " << r << ")";
        return {g_, std::visit([&](const auto& s) -> Geometry { return inner_geom(s, r); }, geom_), d.str()};
    }

    LocatedSet unite(const LocatedSet& o) const {
        return {g_, binary(o, 'u'), "(" + desc_ + " u " + o.desc_ + ")"};
    }
    LocatedSet intersect(const LocatedSet& o) const {
        return {g_, binary(o, 'n'), "(" + desc_ + " n " + o.desc_ + ")"};
    }
    /// closure(S \ T)
    LocatedSet difference_closure(const LocatedSet& o) const {
        return {g_, binary(o, '-'), "cl(" + desc_ + " \\ " + o.desc_ + ")"};
    }
    /// closure(X \ S)
    LocatedSet complement_closure() const {
        Geometry r = std::visit(
            [&](const auto& s) -> Geometry {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, FiniteSet>) {
                    FiniteSet c = s;
                    c.members.flip();
                    return c;
                } else if constexpr (std::is_same_v<S, ArcSet>) {
                    return detail::arcs_complement_closure(s);
                } else {
                    throw Unsupported("complement of a ball union");
                }
            },
            geom_);
        return {g_, std::move(r), "cl(X \\ " + desc_ + ")"};
    }

    /// Enclosure of d(p, S); sets that are empty report a distance beyond the
    /// diameter.
    Interval dist(const Element& p, std::int64_t prec) const {
        const Dyadic beyond = g_->diameter_bound + Dyadic(1);
        return std::visit(
            [&](const auto& s) -> Interval {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, FiniteSet>) {
                    if (s.empty()) return Interval(beyond);
                    return Interval(s.members[static_cast<std::size_t>(p.as<FiniteIndex>().index)] ? 0 : 1);
                } else if constexpr (std::is_same_v<S, ArcSet>) {
                    if (s.empty()) return Interval(beyond);
                    return Interval(detail::arcs_distance(s, p.as<TorusPoint>().coords[0]));
                } else {
                    if (s.balls.empty()) return Interval(beyond);
                    Interval best(beyond);
                    for (const auto& [c, r] : s.balls) {
                        const Interval d = g_->metric(p, c, prec) - Interval(r);
                        const Interval e(max(Dyadic(0), d.lo()), max(Dyadic(0), d.hi()));
                        best = Interval(min(best.lo(), e.lo()), min(best.hi(), e.hi()));
                    }
                    return best;
                }
            },
            geom_);
    }

    const Geometry& geometry() const { return geom_; }
    const Group& group() const { return *g_; }
    std::shared_ptr<const Group> group_ptr() const { return g_; }
    const std::string& description() const { return desc_; }

private:
    static Geometry outer_geom(const FiniteSet& s, const Dyadic& r) {
        if (r < Dyadic(1) || s.empty()) return s;
        return FiniteSet{std::vector<bool>(s.members.size(), true)};
    }
    static Geometry outer_geom(const ArcSet& s, const Dyadic& r) { return detail::arcs_outer(s, r); }
    static Geometry outer_geom(const BallUnion& s, const Dyadic& r) {
        BallUnion o = s;
        for (auto& b : o.balls) b.second = b.second + r;
        return o;
    }

    static Geometry inner_geom(const FiniteSet& s, const Dyadic& r) {
        // d(x, X \ S) is 0 off S, 1 on S (or unbounded if S is everything).
        if (s.full() || r.sign() <= 0) return FiniteSet{std::vector<bool>(s.members.size(), true)};
        if (r <= Dyadic(1)) return s;
        return FiniteSet{std::vector<bool>(s.members.size(), false)};
    }
    static Geometry inner_geom(const ArcSet& s, const Dyadic& r) {
        if (r.sign() <= 0) return detail::full_arcs();
        return detail::arcs_inner(s, r);
    }
    static Geometry inner_geom(const BallUnion&, const Dyadic&) {
        throw Unsupported("inner ball of a ball union");
    }

    Geometry binary(const LocatedSet& o, char op) const {
        if (geom_.index() != o.geom_.index()) throw InvalidArgument("located sets of different kinds");
        if (const auto* x = std::get_if<FiniteSet>(&geom_)) {
            const auto& y = std::get<FiniteSet>(o.geom_);
            FiniteSet r = *x;
            for (std::size_t i = 0; i < r.members.size(); ++i) {
                if (op == 'u') r.members[i] = x->members[i] || y.members[i];
                if (op == 'n') r.members[i] = x->members[i] && y.members[i];
                if (op == '-') r.members[i] = x->members[i] && !y.members[i];
            }
            return r;
        }
        if (const auto* x = std::get_if<ArcSet>(&geom_)) {
            const auto& y = std::get<ArcSet>(o.geom_);
            if (op == 'u') {
                std::vector<Piece> v = x->pieces;
                v.insert(v.end(), y.pieces.begin(), y.pieces.end());
                return ArcSet{detail::normalize_pieces(std::move(v))};
            }
            if (op == 'n') return detail::arcs_intersect(*x, y);
            return detail::arcs_difference_closure(*x, y);
        }
        if (op != 'u') throw Unsupported("only unions of balls are located on this group");
        BallUnion r = std::get<BallUnion>(geom_);
        const auto& y = std::get<BallUnion>(o.geom_);
        r.balls.insert(r.balls.end(), y.balls.begin(), y.balls.end());
        return r;
    }

    std::shared_ptr<const Group> g_;
    Geometry geom_;
    std::string desc_;
};

}  // namespace haar
