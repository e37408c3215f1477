#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "haar/errors.hpp"
#include "haar/group/element.hpp"

namespace haar {

enum class GroupKind { finite, circle, torus, su2, so3, o3, u2 };

inline const char* to_string(GroupKind k) {
    switch (k) {
        case GroupKind::finite: return "finite";
        case GroupKind::circle: return "circle";
        case GroupKind::torus: return "torus";
        case GroupKind::su2: return "su2";
        case GroupKind::so3: return "so3";
        case GroupKind::o3: return "o3";
        case GroupKind::u2: return "u2";
    }
    return "?";
}

/// A compact metric group with certified metric and a dense sequence.
///
/// The optional hooks let instances contribute knowledge the generic
/// machinery cannot derive: explicit separated tuples, pigeonhole upper
/// bounds from explicit nets, and the Cayley table of finite groups.
struct Group {
    GroupKind kind = GroupKind::finite;
    std::string name;

    std::function<Interval(const Element&, const Element&, std::int64_t)> metric;
    std::function<Element(const Element&, const Element&, std::int64_t)> op;
    std::function<Element(const Element&, std::int64_t)> inverse;
    Element identity;
    std::function<Element(std::uint64_t)> dense;
    Dyadic diameter_bound;
    /// Closed-form size of maximum 2^-n packings; empty when unknown.
    std::function<std::int64_t(std::int64_t)> kappa;
    Dyadic lipschitz_op = Dyadic(2);

    /// Finite groups: the Cayley table, row/column 0 the identity.
    std::vector<std::vector<int>> table;
    /// Tori: the dimension.
    int dim = 0;

    /// Points pairwise strictly farther apart than delta, as many as the
    /// instance knows how to place.
    std::function<std::vector<Element>(const Dyadic&)> separated_seed;
    /// Upper bound on the size of any delta-separated set, from an explicit
    /// net of radius delta / 2 and pigeonhole.
    std::function<std::int64_t(const Dyadic&)> separation_upper;
    /// Explicit net with covering radius <= eps (used by the bi-invariant
    /// metric search); may throw EffortExceeded beyond `cap` points.
    std::function<std::vector<Element>(const Dyadic&, std::size_t)> net;

    std::size_t order() const { return table.size(); }
    bool is_finite() const { return kind == GroupKind::finite; }
    bool has_kappa() const { return static_cast<bool>(kappa); }
};

inline Element group_op(const Group& g, const Element& a, const Element& b, std::int64_t p) {
    return g.op(a, b, p);
}

inline Interval group_metric(const Group& g, const Element& a, const Element& b, std::int64_t p) {
    return g.metric(a, b, p);
}

}  // namespace haar
