#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "haar/exactreal/certified.hpp"
#include "haar/generic/located_set.hpp"
#include "haar/generic/measure.hpp"
#include "haar/packing/packing.hpp"

namespace haar {

/// U_i = closure(B_R(p_i) \ union_{j<i} B_R(p_j)).
struct PartitionCell {
    Element center;
    CertifiedValue radius;
    /// Indices j < i whose balls can meet B_R(p_i), i.e. d(p_i, p_j) <= 2R.
    std::vector<std::size_t> predecessors;
    LocatedSet set;
};

struct PartitionOptions {
    /// Depth of the co-inner regular radius search; R is the midpoint of
    /// the resulting interval.
    std::int64_t radius_depth = 2;
    MeasureOptions measure;
};

/// Cells of diameter <= 2^-n+1 covering the group, centred on T_{n+1}, with a
/// common radius R in (2^-(n+1), 2^-n).
inline std::vector<PartitionCell> find_nice_partition(const std::shared_ptr<const Group>& g, const PackingTable& table,
                                                      std::int64_t n, const PartitionOptions& opt = {}) {
    const auto [ra, rb] = find_coinner_radius(g, Dyadic::pow2(-n - 1), Dyadic::pow2(-n), table, opt.radius_depth,
                                              opt.measure);
    const Dyadic r = (ra + rb).ldexp(-1);
    const CertifiedValue radius{r, -opt.radius_depth};
    const auto centers = table.at(n + 1).materialize();
    const Dyadic two_r = r.ldexp(1);

    // Circle coordinates as doubles for a cheap (conservative) pre-filter.
    std::vector<double> coord;
    if (g->kind == GroupKind::circle)
        for (const auto& c : centers) coord.push_back(c.as<TorusPoint>().coords[0].to_double());
    const double reach = two_r.to_double() + 1e-9;

    std::vector<PartitionCell> cells;
    cells.reserve(centers.size());
    for (std::size_t i = 0; i < centers.size(); ++i) {
        std::vector<std::size_t> pred;
        for (std::size_t j = 0; j < i; ++j) {
            if (!coord.empty()) {
                const double dd = std::fabs(coord[i] - coord[j]);
                if (std::min(dd, 1.0 - dd) > reach) continue;
            }
            if (g->metric(centers[i], centers[j], 64).lo() <= two_r) pred.push_back(j);
        }
        LocatedSet ball = LocatedSet::ball(g, centers[i], r);
        if (!pred.empty()) {
            LocatedSet earlier = LocatedSet::ball(g, centers[pred[0]], r);
            for (std::size_t k = 1; k < pred.size(); ++k) earlier = earlier.unite(LocatedSet::ball(g, centers[pred[k]], r));
            ball = ball.difference_closure(earlier);
        }
        cells.push_back({centers[i], radius, std::move(pred), std::move(ball)});
    }
    return cells;
}

}  // namespace haar
