#include <memory>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "haar/exactreal/elementary.hpp"
#include "haar/exactreal/pi.hpp"
#include "haar/functions/builtins.hpp"
#include "haar/generic/integral.hpp"
#include "inequalities.hpp"
#include "oracles.hpp"

using namespace haar;
using oracle::Rational;

namespace {

std::shared_ptr<const Group> circle() { return std::make_shared<const Group>(make_circle_group()); }

std::shared_ptr<const Group> finite(const CayleyTable& t, const std::string& name) {
    return std::make_shared<const Group>(make_finite_group(t, name));
}

Packing packing_of(std::vector<Dyadic> xs) {
    Packing pk;
    pk.kappa = static_cast<std::int64_t>(xs.size());
    for (const auto& x : xs) pk.points.push_back(circle_point(x));
    return pk;
}

// cos^2(2 pi t), 2 pi-Lipschitz, bounded by 1.
Interval cos2(const Element& e, std::int64_t p) {
    const Interval t(e.as<TorusPoint>().coords[0]);
    const Interval c = cos_enclosure(pi_enclosure(p + 6) * t * Interval(2), p + 4);
    return sqr(c);
}

Rational exact_average(const std::vector<Dyadic>& values) {
    Rational s = 0;
    for (const auto& v : values) s += oracle::rational(v);
    return s / Rational(static_cast<long long>(values.size()));
}

bool within(const CertifiedValue& v, const Rational& exact) {
    Rational e = oracle::rational(v.value) - exact;
    if (e < 0) e = -e;
    return e <= oracle::rational(Dyadic::pow2(v.error_exponent));
}

}  // namespace

TEST(PseudoCount, Examples) {
    auto c = circle();
    // 1/3 and 2/3 are represented by dyadics within 2^-60.
    const Dyadic third = Dyadic::div_floor(Dyadic(1), Dyadic(3), 60);
    const Packing t = packing_of({Dyadic(0), third, third.ldexp(1)});
    const LocatedSet s = LocatedSet::ball(c, circle_point(Dyadic(0)), Dyadic::div_floor(Dyadic(1), Dyadic(10), 60));
    EXPECT_EQ(pseudo_count(s, t, 6), (CountRatio{1, 3}));
    EXPECT_EQ(pseudo_count(LocatedSet::whole(c), t, 6), (CountRatio{3, 3}));
    EXPECT_EQ(pseudo_count(LocatedSet::empty(c), t, 6), (CountRatio{0, 3}));
    const LocatedSet far = LocatedSet::ball(c, circle_point(Dyadic::parse("0.5")), Dyadic::pow2(-5));
    EXPECT_EQ(pseudo_count(far, packing_of({Dyadic(0)}), 3).count, 0);
    EXPECT_THROW(pseudo_count(s, Packing{}, 3), InvalidArgument);
}

TEST(PseudoCount, ContractOnRandomArcs) {
    // Counts every point of S and nothing outside B_{2^-n}(S).
    auto c = circle();
    const PackingTable table = PackingTable::build(*c, 12);
    for (int i = 0; i < 300; ++i) {
        const Dyadic centre = wrap_unit(oracle::random_dyadic(0, 20));
        const Dyadic r = abs(oracle::random_dyadic(-2, 16));
        const int n = 1 + i % 10;
        const LocatedSet s = LocatedSet::ball(c, circle_point(centre), r);
        const Packing& pk = table.at(1 + i % 12);
        std::int64_t inside = 0, near = 0;
        for (std::size_t k = 0; k < pk.size(); ++k) {
            const Dyadic d = circle_distance(pk.element(k).as<TorusPoint>().coords[0], centre);
            inside += d <= r;
            near += d <= r + Dyadic::pow2(-n);
        }
        const auto q = pseudo_count(s, pk, n).count;
        EXPECT_LE(inside, q);
        EXPECT_LE(q, near);
    }
}

TEST(PseudoCount, ProgressionPathMatchesPointwise) {
    auto c = circle();
    const PackingTable table = PackingTable::build(*c, 10);
    MeasureOptions pointwise;
    pointwise.fast_path = false;
    for (int i = 0; i < 200; ++i) {
        const LocatedSet a = LocatedSet::ball(c, circle_point(wrap_unit(oracle::random_dyadic(0, 12))),
                                              abs(oracle::random_dyadic(-2, 10)));
        const LocatedSet b = LocatedSet::ball(c, circle_point(wrap_unit(oracle::random_dyadic(0, 12))),
                                              abs(oracle::random_dyadic(-3, 10)));
        const LocatedSet s = i % 2 ? a.difference_closure(b) : a.inner(Dyadic::pow2(-5));
        const Packing& pk = table.at(1 + i % 10);
        const int n = 1 + i % 9;
        EXPECT_EQ(pseudo_count(s, pk, n), pseudo_count(s, pk, n, pointwise)) << s.description();
    }
}

TEST(ComputeMeasure, Examples) {
    auto c = circle();
    const PackingTable table = PackingTable::build(*c, 30);
    EXPECT_TRUE(compute_measure(LocatedSet::ball(c, circle_point(Dyadic(0)), Dyadic::pow2(-3)), table, 4)
                    .contains(Dyadic::pow2(-2)));
    for (int n = 0; n <= 12; ++n) EXPECT_TRUE(compute_measure(LocatedSet::whole(c), table, n).contains(Dyadic(1)));
    EXPECT_EQ(compute_measure(LocatedSet::whole(c), table, 5).error_exponent, -5);

    for (const auto& [name, t] : fixtures::small_groups()) {
        auto g = finite(t, name);
        const PackingTable ft = PackingTable::build(*g, 2);
        const auto k = static_cast<long long>(g->order());
        const std::int64_t n = ceil_log2(Dyadic(k)) + 1;
        std::vector<bool> e(g->order(), false);
        e[0] = true;
        const CertifiedValue mu = compute_measure(LocatedSet::subset(g, e), ft, n);
        EXPECT_TRUE(within(mu, Rational(1, k))) << name;
    }
}

TEST(ComputeMeasure, CircleArcsOfRandomRadius) {
    auto c = circle();
    const PackingTable table = PackingTable::build(*c, 30);
    for (int i = 0; i < 40; ++i) {
        const Dyadic r = Dyadic(BigInt(1 + i), -7);
        const Dyadic centre = wrap_unit(oracle::random_dyadic(0, 16));
        const CertifiedValue mu = compute_measure(LocatedSet::ball(c, circle_point(centre), r), table, 8);
        EXPECT_TRUE(mu.contains(r.ldexp(1))) << r;
    }
}

TEST(ComputeMeasure, PackingsExhausted) {
    auto c = circle();
    const PackingTable small = PackingTable::build(*c, 3);
    EXPECT_THROW(compute_measure(LocatedSet::ball(c, circle_point(Dyadic(0)), Dyadic::pow2(-3)), small, 8),
                 PackingExhausted);
}

TEST(CoinnerRadius, ContractAndNesting) {
    auto c = circle();
    const PackingTable table = PackingTable::build(*c, 30);
    const Dyadic a = Dyadic::pow2(-3), b = Dyadic::pow2(-2);
    const auto [a0, b0] = find_coinner_radius(c, a, b, table, 0);
    const Dyadic tenth = Dyadic::div_floor(b - a, Dyadic(10), 11);
    EXPECT_EQ(a0, a + tenth);
    EXPECT_EQ(b0, b - tenth);
    Dyadic plo = a, phi = b;
    for (int n = 0; n <= 8; ++n) {
        const auto [lo, hi] = find_coinner_radius(c, a, b, table, n);
        EXPECT_LT(plo, lo);
        EXPECT_LT(lo, hi);
        EXPECT_LT(hi, phi);
        EXPECT_LE(hi - lo, Dyadic::pow2(-n)) << n;
        // On the circle the ball measures differ by exactly 2 (hi - lo).
        plo = lo;
        phi = hi;
    }
    EXPECT_THROW(find_coinner_radius(c, b, a, table, 1), InvalidArgument);
    EXPECT_THROW(find_coinner_radius(c, a, b, PackingTable::build(*c, 4), 3), PackingExhausted);
}

TEST(NicePartition, CircleCellsCoverDisjointly) {
    auto c = circle();
    const PackingTable table = PackingTable::build(*c, 30);
    const auto cells = find_nice_partition(c, table, 2);
    ASSERT_EQ(cells.size(), 7u);
    const Dyadic r = cells[0].radius.value;
    EXPECT_LT(Dyadic::pow2(-3), r);
    EXPECT_LT(r, Dyadic::pow2(-2));
    const Dyadic tol = Dyadic::pow2(-20);
    for (int i = 0; i < 10000; ++i) {
        const Dyadic x = wrap_unit(oracle::random_dyadic(0, 30));
        int member = 0;
        bool near_boundary = false;
        for (const auto& cell : cells) {
            const Dyadic dc = circle_distance(cell.center.as<TorusPoint>().coords[0], x);
            near_boundary = near_boundary || abs(dc - r) <= tol;
            if (cell.set.dist(circle_point(x), 40).hi().is_zero()) {
                ++member;
                EXPECT_LE(dc, Dyadic::pow2(-2));
            }
        }
        EXPECT_GE(member, 1) << x;
        if (!near_boundary) EXPECT_EQ(member, 1) << x;
    }
}

TEST(NicePartition, FiniteCellsAreSingletons) {
    for (const auto& [name, t] : fixtures::small_groups()) {
        auto g = finite(t, name);
        const PackingTable table = PackingTable::build(*g, 2);
        for (int n = 1; n <= 3; ++n) {
            const auto cells = find_nice_partition(g, table, n);
            ASSERT_EQ(cells.size(), g->order()) << name;
            std::vector<int> seen(g->order(), 0);
            for (const auto& cell : cells) {
                const auto& fs = std::get<FiniteSet>(cell.set.geometry());
                EXPECT_EQ(fs.count(), 1u);
                EXPECT_TRUE(fs.members[static_cast<std::size_t>(cell.center.as<FiniteIndex>().index)]);
                ++seen[static_cast<std::size_t>(cell.center.as<FiniteIndex>().index)];
            }
            for (int s : seen) EXPECT_EQ(s, 1);
        }
    }
}

TEST(ComputeIntegral, CircleExamples) {
    auto c = circle();
    const PackingTable table = PackingTable::build(*c, 40);
    const GroupFunction one = [](const Element&, std::int64_t) { return Interval(1); };
    for (int n = 0; n <= 6; ++n)
        EXPECT_TRUE(compute_integral(c, one, ModulusOfContinuity::lipschitz(Dyadic(0)), Dyadic(1), table, n)
                        .contains(Dyadic(1)));
    const CertifiedValue v =
        compute_integral(c, cos2, ModulusOfContinuity::lipschitz(Dyadic(BigInt(1609), -8)), Dyadic(1), table, 6);
    EXPECT_EQ(v.error_exponent, -6);
    EXPECT_TRUE(v.contains(Dyadic::pow2(-1))) << v;
}

TEST(ComputeIntegral, FiniteGroupAverage) {
    std::uniform_int_distribution<int> u(-20, 20);
    for (const auto& [name, t] : fixtures::small_groups()) {
        auto g = finite(t, name);
        const PackingTable table = PackingTable::build(*g, 2);
        std::vector<Dyadic> values;
        for (std::size_t i = 0; i < g->order(); ++i) values.push_back(Dyadic(u(oracle::rng())));
        const GroupFunction f = table_function(values).eval;
        const CertifiedValue v = compute_integral(g, f, ModulusOfContinuity::discrete(), Dyadic(20), table, 10);
        EXPECT_TRUE(within(v, exact_average(values))) << name << " " << v;
    }
}

TEST(ComputeIntegral, InvalidBound) {
    auto g = finite(cyclic_table(3), "Z3");
    const PackingTable table = PackingTable::build(*g, 2);
    const GroupFunction f = table_function({Dyadic(1), Dyadic(5), Dyadic(2)}).eval;
    EXPECT_THROW(compute_integral(g, f, ModulusOfContinuity::discrete(), Dyadic(4), table, 4), InvalidBound);
}

TEST(ComputeIntegral, LeftInvariance) {
    std::uniform_int_distribution<int> u(-9, 9);
    for (const auto& [name, t] : fixtures::small_groups()) {
        auto g = finite(t, name);
        const PackingTable table = PackingTable::build(*g, 2);
        std::vector<Dyadic> values;
        for (std::size_t i = 0; i < g->order(); ++i) values.push_back(Dyadic(u(oracle::rng())));
        const GroupFunction f = table_function(values).eval;
        const Dyadic base = compute_integral(g, f, ModulusOfContinuity::discrete(), Dyadic(9), table, 8).value;
        for (int x = 0; x < static_cast<int>(g->order()); ++x) {
            const GroupFunction fx = [&, x](const Element& e, std::int64_t p) { return f(g->op(FiniteIndex{x}, e, p), p); };
            const Dyadic moved = compute_integral(g, fx, ModulusOfContinuity::discrete(), Dyadic(9), table, 8).value;
            EXPECT_LE(abs(moved - base), Dyadic::pow2(-7)) << name;
        }
    }

    auto c = circle();
    const PackingTable table = PackingTable::build(*c, 40);
    const auto modulus = ModulusOfContinuity::lipschitz(Dyadic(BigInt(1609), -8));
    const Dyadic base = compute_integral(c, cos2, modulus, Dyadic(1), table, 4).value;
    for (int i = 0; i < 3; ++i) {
        const Element s = circle_point(wrap_unit(oracle::random_dyadic(0, 20)));
        const GroupFunction moved = [&](const Element& e, std::int64_t p) { return cos2(c->op(s, e, p), p); };
        EXPECT_LE(abs(compute_integral(c, moved, modulus, Dyadic(1), table, 4).value - base), Dyadic::pow2(-3));
    }
}

TEST(ComputeIntegral, Deterministic) {
    auto c = circle();
    const PackingTable table = PackingTable::build(*c, 40);
    const auto modulus = ModulusOfContinuity::lipschitz(Dyadic(BigInt(1609), -8));
    const CertifiedValue a = compute_integral(c, cos2, modulus, Dyadic(1), table, 4);
    const CertifiedValue b = compute_integral(c, cos2, modulus, Dyadic(1), table, 4);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.error_exponent, b.error_exponent);
}

TEST(PackingInequalities, CoreSandwichOnTheCircle) {
    auto c = circle();
    const PackingTable table = PackingTable::build(*c, 8);
    for (int n = 3; n <= 8; ++n) {
        const auto spaced = inequalities::equally_spaced(packing_size(*c, n));
        const auto built = inequalities::table_points(table.at(n));
        for (int j = 1; j <= 20; ++j) {
            const Rational r(2 * j - 1, 82);  // 20 radii in (0, 1/2)
            const Rational rd = oracle::rational(Dyadic(BigInt(2 * j - 1), -6));
            EXPECT_TRUE(inequalities::core_sandwich(spaced, 0, rd, n)) << n << " " << rd;
            EXPECT_TRUE(inequalities::core_sandwich(built, 0, rd, n)) << n << " " << rd;
            EXPECT_TRUE(inequalities::core_sandwich(built, Rational(1, 7), r, n)) << n << " " << r;
        }
    }
}

TEST(PackingInequalities, EvenDistributionOnFiniteGroups) {
    for (const auto& [name, t] : fixtures::small_groups()) {
        if (t.size() > 10) continue;
        const Group g = make_finite_group(t, name);
        const PackingTable table = PackingTable::build(g, 4);
        inequalities::FiniteInequalityOracle o(g);
        for (int n = 1; n <= 4; ++n) EXPECT_TRUE(o.even_distribution(table.at(n), n, false)) << name << " n=" << n;
        // At n = 0 the discrete distance 1 equals the radius, so the inner
        // ball needs the strict reading d(x, X \ U) > 1.
        EXPECT_TRUE(o.even_distribution(table.at(0), 0, true)) << name;
    }
}

TEST(PackingInequalities, EvenDistributionNeedsStrictInnerBallAtRadiusOne) {
    const Group g = make_group("cyclic:2");
    const PackingTable table = PackingTable::build(g, 1);
    inequalities::FiniteInequalityOracle o(g);
    EXPECT_FALSE(o.even_distribution(table.at(0), 0, false));
}

TEST(PackingInequalities, InversionSymmetryExact) {
    for (const auto& [name, t] : fixtures::small_groups()) {
        if (t.size() > 8) continue;
        auto g = finite(t, name);
        const PackingTable table = PackingTable::build(*g, 2);
        inequalities::FiniteInequalityOracle o(*g);
        const int k = o.order();
        for (unsigned u = 0; u < (1u << k); ++u) {
            std::vector<bool> m(k), mi(k);
            const unsigned inv = o.inverse(u);
            for (int i = 0; i < k; ++i) {
                m[i] = u >> i & 1;
                mi[i] = inv >> i & 1;
            }
            const CertifiedValue a = compute_measure(LocatedSet::subset(g, m), table, 6);
            const CertifiedValue b = compute_measure(LocatedSet::subset(g, mi), table, 6);
            EXPECT_EQ(a.value, b.value) << name;
            EXPECT_TRUE(within(a, Rational(__builtin_popcount(u), k)));
        }
    }
}

TEST(PackingInequalities, NonIsomorphicGroupsShareTheMeasure) {
    auto z4 = finite(cyclic_table(4), "Z4");
    auto v4 = finite(fixtures::product_table(2, 2), "Z2xZ2");
    const PackingTable t4 = PackingTable::build(*z4, 2), tv = PackingTable::build(*v4, 2);
    for (int i = 0; i < 4; ++i) {
        std::vector<bool> m(4, false);
        m[i] = true;
        const CertifiedValue a = compute_measure(LocatedSet::subset(z4, m), t4, 10);
        const CertifiedValue b = compute_measure(LocatedSet::subset(v4, m), tv, 10);
        EXPECT_EQ(a.value, b.value);
        EXPECT_EQ(a.value, Dyadic::pow2(-2));
    }
}
