#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "haar/exactreal/elementary.hpp"
#include "haar/functions/builtins.hpp"
#include "haar/generic/integral.hpp"
#include "haar/group/so3.hpp"
#include "haar/quadrature/derived.hpp"
#include "haar/quadrature/lift.hpp"
#include "haar/quadrature/psi.hpp"
#include "haar/quadrature/transform.hpp"
#include "oracles.hpp"
#include "quadrature_oracle.hpp"

using namespace haar;

namespace {

using Q = std::array<double, 4>;

double abs_sum(const Q& q) { return std::fabs(q[0]) + std::fabs(q[1]) + std::fabs(q[2]) + std::fabs(q[3]); }

// |value - x| <= 2^e + slack
bool near(const CertifiedValue& v, double x, double slack = 0) {
    return std::fabs(v.value.to_double() - x) <= std::ldexp(1.0, static_cast<int>(v.error_exponent)) + slack;
}

bool agree(const CertifiedValue& a, const CertifiedValue& b) {
    return abs(a.value - b.value) <= Dyadic::pow2(a.error_exponent) + Dyadic::pow2(b.error_exponent);
}

double circle_oracle(const std::string& name) {
    return oracle::circle_average([&](double re, double im) {
        if (name == "one") return 1.0;
        if (name == "re") return re;
        if (name == "im") return im;
        if (name == "re2") return re * re;
        if (name == "im2") return im * im;
        return std::fabs(re);
    });
}

Element random_versor() {
    std::uniform_int_distribution<std::uint64_t> u(0, 100000);
    return make_su2_group().dense(u(oracle::rng()));
}

}  // namespace

TEST(Psi, Examples) {
    auto is = [](const Versor& v, int w, int x, int y, int z) {
        return v.q.w.contains(Dyadic(w)) && v.q.x.contains(Dyadic(x)) && v.q.y.contains(Dyadic(y)) &&
               v.q.z.contains(Dyadic(z)) && v.q.w.width() <= Dyadic::pow2(-30);
    };
    EXPECT_TRUE(is(psi(dyadic_param_point(0, 3, 5, 3, 40), 40), 1, 0, 0, 0));
    EXPECT_TRUE(is(psi(dyadic_param_point(1, 1, 0, 1, 40), 40), 0, 0, 1, 0));
    EXPECT_TRUE(is(psi(dyadic_param_point(1, 0, 3, 1, 40), 40), 0, 1, 0, 0));
    for (std::uint64_t a = 0; a < 8; ++a)
        for (std::uint64_t b = 0; b < 8; ++b)
            for (std::uint64_t c = 0; c < 8; ++c)
                ASSERT_TRUE(psi(dyadic_param_point(a, b, c, 3, 40), 40).q.norm2().contains(Dyadic(1)));
}

TEST(Jacobian, Examples) {
    const ParamPoint half = dyadic_param_point(1, 1, 0, 1, 40);
    EXPECT_TRUE(jacobian(half.eta, half.theta, 40).contains(Dyadic(1)));
    EXPECT_TRUE(jacobian(Interval(0), Interval(Dyadic(3)), 40).contains(Dyadic(0)));
    const ParamPoint quarter = dyadic_param_point(1, 2, 0, 2, 40);
    const Interval j = jacobian(quarter.eta, quarter.theta, 40);
    EXPECT_TRUE(j.contains(Dyadic::pow2(-1)));
    EXPECT_LE(j.width(), Dyadic::pow2(-30));
    EXPECT_LE(Dyadic(0), jacobian(Interval(Dyadic::pow2(-40)), Interval(Dyadic::pow2(-40)), 20).lo());
}

TEST(Oracle, ClosedForms) {
    const double pi = std::numbers::pi;
    EXPECT_NEAR(oracle::sphere_average([](const Q&) { return 1.0; }), 1.0, 1e-3);
    EXPECT_NEAR(oracle::sphere_average(abs_sum), 16 / (3 * pi), 1e-3);
    EXPECT_NEAR(oracle::sphere_average([](const Q& q) { return q[0] * q[0]; }), 0.25, 1e-3);
    EXPECT_NEAR(oracle::sphere_average([](const Q& q) { return std::hypot(q[0], q[1]); }), 2.0 / 3, 1e-3);
    // trace of the rotation of q is 4 w^2 - 1, whose mean is 0.
    EXPECT_NEAR(oracle::sphere_average([](const Q& q) { return 4 * q[0] * q[0] - 1; }), 0.0, 1e-3);
    EXPECT_NEAR(circle_oracle("abs-re"), 2 / pi, 1e-6);
}

TEST(Su2, Examples) {
    const Group g = make_su2_group();
    for (int n : {1, 4, 8, 12}) EXPECT_TRUE(haar_integral_su2(make_builtin(g, "one"), n).contains(Dyadic(1))) << n;
    for (int n = 2; n <= 6; ++n) {
        const CertifiedValue v = haar_integral_su2(make_builtin(g, "abs-sum"), n);
        EXPECT_EQ(v.error_exponent, -n);
        EXPECT_TRUE(near(v, 16 / (3 * std::numbers::pi))) << n << " " << v.value.to_double();
    }
    EXPECT_TRUE(near(haar_integral_su2(make_builtin(g, "w2"), 6), 0.25));
}

TEST(Circle, Examples) {
    const Group g = make_circle_group();
    for (int n : {1, 6, 10, 14}) {
        EXPECT_TRUE(haar_integral_circle(make_builtin(g, "one"), n).contains(Dyadic(1)));
        EXPECT_TRUE(haar_integral_circle(make_builtin(g, "re"), n).contains(Dyadic(0)));
        EXPECT_TRUE(haar_integral_circle(make_builtin(g, "re2"), n).contains(Dyadic::pow2(-1)));
    }
    for (const auto& name : circle_builtin_names())
        EXPECT_TRUE(near(haar_integral_circle(make_builtin(g, name), 10), circle_oracle(name), 1e-6)) << name;
}

TEST(Derived, Examples) {
    const Group so3 = make_so3_group(), o3 = make_o3_group(), u2 = make_u2_group();
    for (int n : {4, 10}) {
        EXPECT_TRUE(haar_integral_derived(GroupKind::so3, make_builtin(so3, "one"), n).contains(Dyadic(1)));
        EXPECT_TRUE(haar_integral_derived(GroupKind::o3, make_builtin(o3, "one"), n).contains(Dyadic(1)));
        EXPECT_TRUE(haar_integral_derived(GroupKind::u2, make_builtin(u2, "one"), n).contains(Dyadic(1)));
    }
    EXPECT_TRUE(haar_integral_derived(GroupKind::o3, make_builtin(o3, "sign"), 6).contains(Dyadic(0)));
    const double trace_mean = oracle::sphere_average([](const Q& q) { return 4 * q[0] * q[0] - 1; });
    EXPECT_TRUE(near(haar_integral_derived(GroupKind::so3, make_builtin(so3, "trace"), 5), trace_mean, 1e-3));
    EXPECT_TRUE(haar_integral_derived(GroupKind::so3, make_builtin(so3, "trace"), 5).contains(Dyadic(0)));
    EXPECT_TRUE(near(haar_integral_derived(GroupKind::u2, make_builtin(u2, "abs-sum"), 4), 16 / (3 * std::numbers::pi)));
    EXPECT_TRUE(haar_integral_derived(GroupKind::u2, make_builtin(u2, "re"), 3).contains(Dyadic(0)));
    EXPECT_THROW(haar_integral_quadrature(GroupKind::finite, make_builtin(so3, "one"), 4), Unsupported);
}

TEST(Derived, TraceBuiltinMatchesRotationMatrix) {
    const Group so3 = make_so3_group();
    const IntegrandSpec tr = make_builtin(so3, "trace");
    for (int i = 0; i < 200; ++i) {
        const Versor v = random_versor().as<Versor>();
        const Interval a = tr.eval(v, 40);
        EXPECT_TRUE(a.intersects(trace(so3_from_versor(v, 40))));
        EXPECT_TRUE(a.intersects(tr.eval(Versor{-v.q}, 40)));
    }
}

TEST(Derived, DoubleCoverConsistency) {
    const Group su2 = make_su2_group(), so3 = make_so3_group();
    for (const std::string name : {"one", "abs-sum", "w2", "trace", "lift:re2"}) {
        const IntegrandSpec f = make_builtin(name.rfind("lift:", 0) == 0 ? su2 : so3, name);
        const CertifiedValue a = haar_integral_quadrature(GroupKind::so3, f, 5);
        const CertifiedValue b = haar_integral_quadrature(GroupKind::su2, f, 5);
        EXPECT_TRUE(agree(a, b)) << name;
        for (int i = 0; i < 50; ++i) {
            const Versor v = random_versor().as<Versor>();
            EXPECT_TRUE(f.eval(v, 40).intersects(f.eval(Versor{-v.q}, 40))) << name;
        }
    }
}

TEST(Lift, ValuesAndLaw) {
    const Group su2 = make_su2_group(), c = make_circle_group();
    const IntegrandSpec one = lift_circle_function(make_builtin(c, "one"));
    EXPECT_TRUE(one.eval(versor(0, 1, 0, 0), 30).contains(Dyadic(1)));
    EXPECT_TRUE(one.eval(versor(Interval(Dyadic::parse("0.375")), Interval(0), Interval(0), Interval(0)), 30)
                    .contains(Dyadic::parse("0.375")));
    EXPECT_TRUE(one.eval(versor(0, 0, 1, 0), 30).contains(Dyadic(0)));
    const IntegrandSpec re = lift_circle_function(make_builtin(c, "re"));
    EXPECT_TRUE(re.eval(versor(Interval(Dyadic::parse("0.375")), Interval(0), Interval(0), Interval(0)), 30)
                    .contains(Dyadic::parse("0.375")));
    EXPECT_EQ(one.bound, Dyadic(1));
    for (const auto& name : circle_builtin_names()) {
        const CertifiedValue lifted = haar_integral_su2(make_builtin(su2, "lift:" + name), 6);
        const CertifiedValue base = haar_integral_circle(make_builtin(c, name), 6);
        const double expected = 2.0 / 3 * base.value.to_double();
        EXPECT_LE(std::fabs(lifted.value.to_double() - expected), std::ldexp(1.0, -6) * (1 + 2.0 / 3)) << name;
        EXPECT_NEAR(lifted.value.to_double(), 2.0 / 3 * circle_oracle(name), std::ldexp(1.0, -6) + 1e-3) << name;
    }
}

TEST(Lift, SampledLipschitzBound) {
    const Group su2 = make_su2_group();
    for (const auto& name : circle_builtin_names()) {
        const IntegrandSpec f = make_builtin(su2, "lift:" + name);
        for (int i = 0; i < 200; ++i) {
            const Element a = random_versor(), b = random_versor();
            const Interval fa = f.eval(a, 40), fb = f.eval(b, 40);
            const Dyadic diff = max(fb.lo() - fa.hi(), fa.lo() - fb.hi());
            EXPECT_LE(diff, f.lipschitz * su2.metric(a, b, 40).hi()) << name;
            EXPECT_LE(abs(fa.mid()), f.bound + Dyadic::pow2(-30));
        }
    }
}

TEST(Invariance, Su2TranslationsAndInversion) {
    const Group g = make_su2_group();
    const IntegrandSpec f = make_builtin(g, "abs-sum");
    const CertifiedValue base = haar_integral_su2(f, 5);
    for (int i = 0; i < 5; ++i) {
        const Element s = random_versor();
        EXPECT_TRUE(agree(base, haar_integral_su2(translate(f, GroupKind::su2, s, Side::left), 5)));
        EXPECT_TRUE(agree(base, haar_integral_su2(translate(f, GroupKind::su2, s, Side::right), 5)));
    }
    EXPECT_TRUE(agree(base, haar_integral_su2(invert(f, GroupKind::su2), 5)));
}

TEST(Invariance, CircleTranslationsAndInversion) {
    const Group g = make_circle_group();
    for (const auto& name : circle_builtin_names()) {
        const IntegrandSpec f = make_builtin(g, name);
        const CertifiedValue base = haar_integral_circle(f, 8);
        for (int i = 0; i < 5; ++i) {
            const Element s = circle_point(wrap_unit(oracle::random_dyadic(0, 24)));
            EXPECT_TRUE(agree(base, haar_integral_circle(translate(f, GroupKind::circle, s, Side::left), 8))) << name;
        }
        EXPECT_TRUE(agree(base, haar_integral_circle(invert(f, GroupKind::circle), 8))) << name;
    }
}

TEST(CrossEngine, CircleQuadratureMatchesGenericIntegral) {
    auto c = std::make_shared<const Group>(make_circle_group());
    const PackingTable table = PackingTable::build(*c, 40);
    for (const auto& name : circle_builtin_names()) {
        const IntegrandSpec f = make_builtin(*c, name);
        for (int n : {3, 6}) {
            const CertifiedValue q = haar_integral_circle(f, n);
            const CertifiedValue gi =
                compute_integral(c, f.eval, ModulusOfContinuity::lipschitz(f.lipschitz), f.bound, table, n);
            EXPECT_TRUE(agree(q, gi)) << name << " n=" << n;
        }
    }
}

TEST(Errors, InvalidBoundAndEffortCap) {
    const Group g = make_su2_group();
    IntegrandSpec f = make_builtin(g, "abs-sum");
    f.bound = Dyadic(1);  // |w|+|x|+|y|+|z| reaches 2
    EXPECT_THROW(haar_integral_su2(f, 4), InvalidBound);
    QuadratureOptions tight;
    tight.effort_cap = 1000;
    EXPECT_THROW(haar_integral_su2(make_builtin(g, "abs-sum"), 8, tight), NoConvergence);
}
