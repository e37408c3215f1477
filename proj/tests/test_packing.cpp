#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "haar/packing/packing.hpp"

using namespace haar;

namespace {

// Largest set of grid points j / 2^k on the circle with pairwise distance
// > 2^-n, by depth-first search; 0 is included by rotation invariance.
int brute_force_circle(int n, int k) {
    const long grid = 1L << k;
    const long gap = (1L << (k - n)) + 1;  // strictly more than 2^-n, in grid units
    int best = 1;
    std::vector<long> chosen{0};
    std::function<void(long)> dfs = [&](long from) {
        best = std::max(best, static_cast<int>(chosen.size()));
        for (long p = from; p <= grid - gap; ++p) {
            if (static_cast<long>(chosen.size()) + (grid - gap - p) / gap + 1 <= best) return;
            chosen.push_back(p);
            dfs(p + gap);
            chosen.pop_back();
        }
    };
    dfs(gap);
    return best;
}

// Largest subset of a finite group with pairwise metric > 2^-n.
int brute_force_finite(const Group& g, int n) {
    const int k = static_cast<int>(g.order());
    int best = 0;
    for (int mask = 1; mask < (1 << k); ++mask) {
        bool ok = true;
        for (int a = 0; a < k && ok; ++a)
            for (int b = a + 1; b < k && ok; ++b)
                if ((mask >> a & 1) && (mask >> b & 1))
                    ok = Dyadic::pow2(-n) < g.metric(FiniteIndex{a}, FiniteIndex{b}, 8).lo();
        if (ok) best = std::max(best, __builtin_popcount(static_cast<unsigned>(mask)));
    }
    return best;
}

}  // namespace

TEST(Packing, SizeExamples) {
    const Group c = make_circle_group();
    EXPECT_EQ(packing_size(c, 3), 7);
    EXPECT_EQ(packing_size(c, 1), 1);
    EXPECT_EQ(packing_size(c, 0), 1);
    const Group z6 = make_group("cyclic:6");
    for (int n = 1; n < 10; ++n) EXPECT_EQ(packing_size(z6, n), 6);
    EXPECT_EQ(packing_size(z6, 0), 1);
    EXPECT_THROW(packing_size(make_su2_group(), 3), KappaUnavailable);
    EXPECT_THROW(packing_size(make_torus_group(2), 3), KappaUnavailable);
}

TEST(Packing, CircleClosedFormAgainstBruteForce) {
    for (int n = 1; n <= 4; ++n) EXPECT_EQ(brute_force_circle(n, 2 * n + 1), (1 << n) - 1) << n;
}

TEST(Packing, CircleClosedFormAgainstBracket) {
    const Group c = make_circle_group();
    for (int n = 0; n <= 12; ++n) {
        const PackingBracket b = packing_size_bracket(c, Dyadic::pow2(-n), 100000);
        EXPECT_EQ(b.lower, packing_size(c, n)) << n;
        EXPECT_EQ(b.upper, packing_size(c, n)) << n;
    }
}

TEST(Packing, FiniteMaximalityExhaustive) {
    for (const auto& [name, table] : fixtures::small_groups()) {
        if (table.size() > 10) continue;
        const Group g = make_finite_group(table, name);
        for (int n = 0; n <= 3; ++n) EXPECT_EQ(brute_force_finite(g, n), packing_size(g, n)) << name << " n=" << n;
    }
}

TEST(Packing, MaxPackingExamples) {
    const Group c = make_circle_group();
    PackingOptions generic;
    generic.generic_only = true;
    const auto p2 = max_packing(c, 2, 3, generic);
    EXPECT_EQ(p2.size(), 3u);
    EXPECT_TRUE(certify_separated(c, p2, Dyadic::pow2(-2)));
    const auto p1 = max_packing(c, 1, 1);
    EXPECT_EQ(p1.size(), 1u);
    const Group z5 = make_group("cyclic:5");
    EXPECT_EQ(max_packing(z5, 1, 5).size(), 5u);
    EXPECT_THROW(max_packing(c, 2, 0), InvalidArgument);
}

TEST(Packing, GenericSearchFindsCirclePackings) {
    const Group c = make_circle_group();
    PackingOptions generic;
    generic.generic_only = true;
    for (int n = 0; n <= 3; ++n) {
        const auto pts = max_packing(c, n, packing_size(c, n), generic);
        EXPECT_TRUE(certify_separated(c, pts, Dyadic::pow2(-n))) << n;
    }
}

TEST(Packing, TableEntriesCertified) {
    const Group c = make_circle_group();
    const PackingTable t = PackingTable::build(c, 12);
    std::int64_t prev = 0;
    for (std::int64_t n = 0; n <= 12; ++n) {
        const Packing& pk = t.at(n);
        EXPECT_EQ(pk.kappa, (std::int64_t{1} << n) - 1 + (n == 0 ? 1 : 0));
        EXPECT_TRUE(certify_separated(c, pk.materialize(), Dyadic::pow2(-n))) << n;
        EXPECT_GE(pk.kappa, prev);
        prev = pk.kappa;
    }
    EXPECT_THROW(t.at(13), PackingExhausted);

    const Group q8 = make_finite_group(fixtures::q8_table(), "Q8");
    const PackingTable tq = PackingTable::build(q8, 5);
    EXPECT_EQ(tq.at(1000).kappa, 8);
    EXPECT_TRUE(certify_separated(q8, tq.at(3).points, Dyadic::pow2(-3)));
}

TEST(Packing, CertificateRejectsCloseAndBorderlinePairs) {
    const Group c = make_circle_group();
    std::vector<Element> pts{circle_point(Dyadic(0)), circle_point(Dyadic::parse("0.25"))};
    EXPECT_FALSE(certify_separated(c, pts, Dyadic::pow2(-2)));
    EXPECT_TRUE(certify_separated(c, pts, Dyadic::parse("0.125")));
    std::vector<Element> wrap{circle_point(Dyadic::parse("0.0625")), circle_point(Dyadic::parse("0.9375"))};
    EXPECT_FALSE(certify_separated(c, wrap, Dyadic::pow2(-3)));
}

TEST(Packing, BracketExamples) {
    const Group c = make_circle_group();
    const PackingBracket b = packing_size_bracket(c, Dyadic::pow2(-2), 1000);
    EXPECT_EQ(b.lower, 3);
    EXPECT_EQ(b.upper, 3);
    const Group z6 = make_group("cyclic:6");
    const PackingBracket bz = packing_size_bracket(z6, Dyadic::pow2(-1), 1000);
    EXPECT_EQ(bz.lower, 6);
    EXPECT_EQ(bz.upper, 6);
    const PackingBracket bs = packing_size_bracket(make_su2_group(), Dyadic(1), 20000);
    EXPECT_GE(bs.lower, 2);
    EXPECT_LE(bs.lower, bs.upper);
    const PackingBracket bt = packing_size_bracket(make_torus_group(2), Dyadic::pow2(-2), 20000);
    EXPECT_LE(bt.lower, bt.upper);
    EXPECT_GE(bt.lower, 9);
}

TEST(Packing, TextFormat) {
    const Group c = make_circle_group();
    const PackingTable t = PackingTable::build(c, 3);
    std::ostringstream os;
    write_packing(os, t.at(3));
    std::istringstream in(os.str());
    std::int64_t n = 0, k = 0;
    in >> n >> k;
    EXPECT_EQ(n, 3);
    EXPECT_EQ(k, 7);
    std::string tok;
    std::vector<Element> back;
    while (in >> tok) back.push_back(circle_point(Dyadic::parse(tok)));
    EXPECT_EQ(back.size(), 7u);
    EXPECT_TRUE(certify_separated(c, back, Dyadic::pow2(-3)));
}
