#include <doctest.h>

#include <cmath>

#include "hardykit/conditions_bilinear.hpp"

using namespace hardykit;

namespace {

const QuadratureSettings kQuad{};

// f = t^{-3}, g = h = 1 on (0,inf): with alpha = beta/2 + gamma/2 balance,
// Bt1(x) = 2^{-1/2} for every x
BilinearContext symmetric_ctx() {
    Interval iv(0.0, kInf);
    return make_bilinear_context(WeightSpec::power(-3.0, iv), WeightSpec::constant(1.0, iv),
                                 WeightSpec::constant(1.0, iv), kQuad);
}

AuxFunctionSpec auxG(double c = 1.0) { return AuxFunctionSpec{AuxFunctionSpec::Base::G, c, nullptr}; }
AuxFunctionSpec auxH(double c = 1.0) { return AuxFunctionSpec{AuxFunctionSpec::Base::H, c, nullptr}; }

}  // namespace

TEST_CASE("Bt1 pointwise and sup on the symmetric power config") {
    auto ctx = symmetric_ctx();
    BilinearParams p;
    p.alpha = 0.5;
    p.beta = 0.5;
    p.gamma = 0.5;
    auto r = eval_bilinear_pointwise(BilinearConditionId::Bt1, 1.0, p, ctx);
    CHECK(r.value.as_double() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

    auto sup = sup_bilinear(BilinearConditionId::Bt1, p, ctx, ctx.domain);
    CHECK(sup.converged);
    CHECK(sup.value.as_double() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
}

TEST_CASE("Bt2 with s1=beta, s2=gamma reduces to Bt1") {
    auto ctx = symmetric_ctx();
    BilinearParams p;
    p.alpha = 0.5;
    p.beta = 0.5;
    p.gamma = 0.5;
    p.s1 = 0.5;
    p.s2 = 0.5;
    for (double x : {0.25, 1.0, 7.5}) {
        auto b1 = eval_bilinear_pointwise(BilinearConditionId::Bt1, x, p, ctx);
        auto b2 = eval_bilinear_pointwise(BilinearConditionId::Bt2, x, p, ctx);
        CHECK(b2.value.as_double() == doctest::Approx(b1.value.as_double()).epsilon(1e-9));
    }
}

TEST_CASE("closed-form oracles for Bt8 and Bt13 on the symmetric config") {
    auto ctx = symmetric_ctx();

    // Bt13 with s = 0.25: value = 1.5^{0.75} * 2^{0.25}, constant in x
    BilinearParams p13;
    p13.alpha = 0.5;
    p13.beta = 0.5;
    p13.gamma = 0.5;
    p13.s = 0.25;
    double expect13 = std::pow(1.5, 0.75) * std::pow(2.0, 0.25);
    auto v13 = eval_bilinear_pointwise(BilinearConditionId::Bt13, 3.0, p13, ctx);
    CHECK(v13.value.as_double() == doctest::Approx(expect13).epsilon(1e-11));

    // Bt8 with alpha < s1: constant (3/11)^{-0.3} * 1.6875^{-0.8}
    BilinearParams p8;
    p8.alpha = 0.5;
    p8.beta = 0.5;
    p8.gamma = 0.5;
    p8.s1 = 0.8;
    p8.s2 = 0.25;
    double expect8 = std::pow(3.0 / 11.0, -0.3) * std::pow(1.6875, -0.8);
    auto v8 = eval_bilinear_pointwise(BilinearConditionId::Bt8, 2.0, p8, ctx);
    CHECK(v8.value.as_double() == doctest::Approx(expect8).epsilon(1e-11));
}

TEST_CASE("identity: Bt18 at (G,H) equals 2^{s1+s2} Bt2 pointwise") {
    auto ctx = symmetric_ctx();
    double grid[] = {0.05, 0.3, 1.0, 4.0, 40.0};
    double sets[][2] = {{0.6, 0.7}, {0.8, 0.9}, {1.2, 0.75}};
    for (auto& st : sets) {
        BilinearParams p;
        p.alpha = 0.5;
        p.beta = 0.5;
        p.gamma = 0.5;
        p.s1 = st[0];
        p.s2 = st[1];
        for (double x : grid) {
            auto b2 = eval_bilinear_pointwise(BilinearConditionId::Bt2, x, p, ctx);
            auto b18 =
                eval_bilinear_pointwise(BilinearConditionId::Bt18, x, p, ctx, auxG(), auxH());
            double expect = std::pow(2.0, p.s1 + p.s2) * b2.value.as_double();
            CHECK(b18.value.as_double() == doctest::Approx(expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("identity: Bt21 at (G,H) equals 2^{beta+gamma+s1+s2} Bt3 pointwise") {
    auto ctx = symmetric_ctx();
    double grid[] = {0.1, 0.9, 2.5, 12.0};
    double sets[][2] = {{0.6, 0.7}, {0.25, 0.4}, {1.0, 0.3}};
    for (auto& st : sets) {
        BilinearParams p;
        p.alpha = 0.5;
        p.beta = 0.5;
        p.gamma = 0.5;
        p.s1 = st[0];
        p.s2 = st[1];
        for (double x : grid) {
            auto b3 = eval_bilinear_pointwise(BilinearConditionId::Bt3, x, p, ctx);
            auto b21 =
                eval_bilinear_pointwise(BilinearConditionId::Bt21, x, p, ctx, auxG(), auxH());
            double expect = std::pow(2.0, p.beta + p.gamma + p.s1 + p.s2) * b3.value.as_double();
            CHECK(b21.value.as_double() == doctest::Approx(expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("Bt16 with h1 = H matches the hand-built formula") {
    auto ctx = symmetric_ctx();
    BilinearParams p;
    p.alpha = 0.5;
    p.beta = 0.5;
    p.gamma = 0.5;
    p.s = 0.8;  // gamma < s
    double x = 1.7;
    auto v = eval_bilinear_pointwise(BilinearConditionId::Bt16, x, p, ctx, auxH());
    // (int_x^inf f H^{(gamma-s)/alpha})^alpha G^beta (2H)^s, assembled by hand:
    // integrand t^{-3} t^{-0.6} = t^{-3.6}
    double inner = std::pow(x, -2.6) / 2.6;
    double expect = std::pow(inner, 0.5) * std::pow(x, 0.5) * std::pow(2.0 * x, 0.8);
    CHECK(v.value.as_double() == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("inf over candidates never exceeds the canonical pair") {
    auto ctx = symmetric_ctx();
    BilinearParams p;
    p.alpha = 0.5;
    p.beta = 0.5;
    p.gamma = 0.5;
    p.s1 = 0.8;
    p.s2 = 0.9;
    auto canonical = sup_bilinear(BilinearConditionId::Bt18, p, ctx, ctx.domain, auxG(), auxH());
    auto inf = inf_bilinear(BilinearConditionId::Bt18, p, ctx, ctx.domain,
                            {auxG(0.5), auxG(1.0), auxG(2.0)}, {auxH(0.5), auxH(1.0), auxH(2.0)});
    CHECK(inf.estimate.value.as_double() <= canonical.value.as_double() + 1e-12);
}

TEST_CASE("bilinear_D oracles") {
    Interval iv(0.0, kInf);
    auto u = WeightSpec::power(-3.0, iv);
    auto one = WeightSpec::constant(1.0, iv);

    auto d = bilinear_D(u, one, one, 2.0, 2.0, 2.0);
    CHECK(d.converged);
    CHECK(d.value.as_double() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));

    CHECK_THROWS_AS(bilinear_D(u, one, one, 2.0, 2.0, 1.5), ExponentOutOfRange);

    // scaling v1 by 4 halves the condition value (V1 -> x/4, outer power 1/2)
    auto d4 = bilinear_D(u, WeightSpec::constant(4.0, iv), one, 2.0, 2.0, 2.0);
    CHECK(d4.value.as_double() == doctest::Approx(0.5 * std::sqrt(0.5)).epsilon(1e-9));

    // symmetry in the two lower factors (u = t^{-4} balances these exponents)
    auto ub = WeightSpec::power(-4.0, iv);
    auto v1 = WeightSpec::constant(2.0, iv);
    auto v2 = WeightSpec::power(0.25, iv);
    auto d12 = bilinear_D(ub, v1, v2, 2.0, 2.5, 3.0);
    auto d21 = bilinear_D(ub, v2, v1, 2.5, 2.0, 3.0);
    REQUIRE(d12.value.is_finite());
    CHECK(d12.value.as_double() == doctest::Approx(d21.value.as_double()).epsilon(1e-12));
}

TEST_CASE("At_i delegates to Bt_{i+1} on the shared code path") {
    Interval iv(0.0, kInf);
    auto u = WeightSpec::power(-3.0, iv);
    auto one = WeightSpec::constant(1.0, iv);
    auto ctx = hardy_bilinear_context(u, one, one, 2.0, 2.0, kQuad);

    BilinearParams p;
    p.s1 = 0.7;
    p.s2 = 0.6;
    auto at1 = eval_A_tilde(1, p, ctx, 2.0, 2.0, 2.0);
    BilinearParams sub = p;
    sub.alpha = 0.5;
    sub.beta = 0.5;
    sub.gamma = 0.5;
    auto bt2 = sup_bilinear(BilinearConditionId::Bt2, sub, ctx, ctx.domain);
    CHECK(at1.estimate.value.as_double() == bt2.value.as_double());  // identical path
    CHECK_FALSE(at1.inf_type);

    // At1 at s1 = 1/p1', s2 = 1/p2' collapses to the D form
    BilinearParams pc;
    pc.s1 = 0.5;
    pc.s2 = 0.5;
    auto atc = eval_A_tilde(1, pc, ctx, 2.0, 2.0, 2.0);
    auto d = bilinear_D(u, one, one, 2.0, 2.0, 2.0);
    CHECK(atc.estimate.value.as_double() ==
          doctest::Approx(d.value.as_double()).epsilon(1e-12));

    // inf-type members flag their upper-bound nature
    BilinearParams pi;
    pi.s = 0.8;
    auto at15 = eval_A_tilde(15, pi, ctx, 2.0, 2.0, 2.0);
    CHECK(at15.inf_type);
    CHECK(at15.upper_bound_via_candidates);
    CHECK(at15.estimate.value.is_finite());
}

TEST_CASE("side conditions and aux requirements") {
    auto ctx = symmetric_ctx();
    BilinearParams p;
    p.alpha = 0.5;
    p.beta = 0.5;
    p.gamma = 0.5;
    p.s = 0.25;
    p.s1 = 0.8;
    p.s2 = 0.8;

    // alpha < s1 here, so Bt6 must refuse
    CHECK_THROWS_AS(eval_bilinear_pointwise(BilinearConditionId::Bt6, 1.0, p, ctx),
                    SideConditionViolated);
    BilinearParams p2 = p;
    p2.s1 = 0.25;
    CHECK_THROWS_AS(eval_bilinear_pointwise(BilinearConditionId::Bt8, 1.0, p2, ctx),
                    SideConditionViolated);
    // Bt14 needs alpha > s
    BilinearParams p3 = p;
    p3.s = 0.8;
    CHECK_THROWS_AS(eval_bilinear_pointwise(BilinearConditionId::Bt14, 1.0, p3, ctx),
                    SideConditionViolated);
    // Bt18 without aux functions
    CHECK_THROWS_AS(eval_bilinear_pointwise(BilinearConditionId::Bt18, 1.0, p, ctx),
                    MissingAuxFunction);
    // Bt18 with beta >= s1
    BilinearParams p4 = p;
    p4.s1 = 0.4;
    CHECK_THROWS_AS(
        eval_bilinear_pointwise(BilinearConditionId::Bt18, 1.0, p4, ctx, auxG(), auxH()),
        SideConditionViolated);
}

TEST_CASE("id round-trip") {
    for (int i = 0; i < 23; ++i) {
        auto id = static_cast<BilinearConditionId>(i);
        CHECK(bilinear_id_from_string(to_string(id)) == id);
    }
    CHECK(bilinear_id_from_string("D") == BilinearConditionId::D);
    CHECK_THROWS_AS(bilinear_id_from_string("Bt24"), ConfigInvalid);
}
