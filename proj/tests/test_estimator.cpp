#include <doctest.h>

#include <cmath>

#include "hardykit/estimator.hpp"

using namespace hardykit;

namespace {

const Interval kPos(0.0, kInf);

EstimatorProblem classic_h1() {
    EstimatorProblem prob;
    prob.kind = InequalityKind::H1;
    prob.u = WeightSpec::power(-2.0, kPos);
    prob.v = {WeightSpec::constant(1.0, kPos)};
    prob.p = {2.0};
    prob.q = 2.0;
    return prob;
}

EstimatorProblem classic_h2() {
    EstimatorProblem prob;
    prob.kind = InequalityKind::H2;
    prob.u = WeightSpec::power(-3.0, kPos);
    prob.v = {WeightSpec::constant(1.0, kPos), WeightSpec::constant(1.0, kPos)};
    prob.p = {2.0, 2.0};
    prob.q = 2.0;
    return prob;
}

}  // namespace

TEST_CASE("classical Hardy quotient of an indicator is sqrt(2) for every t") {
    auto prob = classic_h1();
    for (double t : {0.1, 1.0, 13.0}) {
        auto f = WeightSpec::indicator(Interval(0.0, t), kPos);
        auto s = quotient_linear(f, prob.u, prob.v[0], 2.0, 2.0);
        // int_0^inf min(x,t)^2 x^{-2} dx = 2t, ||f||^2 = t
        CHECK(s.lhs == doctest::Approx(std::sqrt(2.0 * t)).epsilon(1e-8));
        CHECK(s.rhs == doctest::Approx(std::sqrt(t)).epsilon(1e-10));
        CHECK(s.quotient == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
    }
    CHECK_THROWS_AS(quotient_linear(WeightSpec::constant(0.0, kPos), prob.u, prob.v[0], 2.0, 2.0),
                    ZeroTestFunction);
}

TEST_CASE("quotients are scale invariant in the test function") {
    auto prob = classic_h1();
    auto f = WeightSpec::indicator(Interval(0.0, 2.0), kPos);
    double base = quotient_linear(f, prob.u, prob.v[0], 2.0, 2.0).quotient;
    for (double c : {0.5, 7.0}) {
        double scaled = quotient_linear(f.scaled(c), prob.u, prob.v[0], 2.0, 2.0).quotient;
        CHECK(scaled == doctest::Approx(base).epsilon(1e-10));
    }
}

TEST_CASE("bilinear quotient of matched indicators") {
    auto prob = classic_h2();
    for (double t : {0.5, 2.0}) {
        auto f = WeightSpec::indicator(Interval(0.0, t), kPos);
        auto s = quotient_bilinear(f, f, prob.u, prob.v[0], prob.v[1], 2.0, 2.0, 2.0);
        // int min(x,t)^4 x^{-3} dx = t^2/2 + t^2/2 = t^2, both norms sqrt(t)
        CHECK(s.lhs == doctest::Approx(t).epsilon(1e-8));
        CHECK(s.rhs == doctest::Approx(t).epsilon(1e-10));
        CHECK(s.quotient == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("bilinear quotient is symmetric under factor swap") {
    auto prob = classic_h2();
    auto f = WeightSpec::indicator(Interval(0.0, 1.0), kPos);
    auto g = WeightSpec::indicator(Interval(0.0, 3.0), kPos);
    auto s12 = quotient_bilinear(f, g, prob.u, prob.v[0], prob.v[1], 2.0, 2.0, 2.0);
    auto s21 = quotient_bilinear(g, f, prob.u, prob.v[1], prob.v[0], 2.0, 2.0, 2.0);
    CHECK(s12.quotient == doctest::Approx(s21.quotient).epsilon(1e-10));
}

TEST_CASE("geometric-mean quotient: constant test function is neutral") {
    EstimatorProblem prob;
    prob.kind = InequalityKind::GM;
    prob.u = WeightSpec::indicator(Interval(0.0, 1.0), kPos);
    prob.v = {WeightSpec::constant(1.0, kPos)};
    prob.p = {2.0};
    prob.q = 2.0;
    auto f = WeightSpec::constant(1.0, Interval(0.0, 1.0));
    auto s = quotient_geomean(f, std::nullopt, prob);
    CHECK(s.quotient == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("maximize_quotient: classical bracket") {
    TestFunctionFamily fam;
    fam.kind = TestFunctionKind::TruncatedDual;
    auto br = maximize_quotient(fam, classic_h1());
    CHECK(br.lower >= std::sqrt(2.0) - 1e-6);
    CHECK(br.condition_value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(br.ratio > 0.0);
    CHECK(br.ratio <= 10.0);
    CHECK(br.evaluated > 0);
}

TEST_CASE("maximize_quotient: bilinear bracket") {
    TestFunctionFamily fam;
    fam.kind = TestFunctionKind::TruncatedDual;
    fam.grid = 9;  // product grid, keep it light
    auto br = maximize_quotient(fam, classic_h2());
    CHECK(br.lower >= std::sqrt(3.0) / 2.0 - 1e-6);
    CHECK(br.condition_value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));
    CHECK(br.ratio > 0.0);
    CHECK(br.ratio <= 10.0);
}

TEST_CASE("growing the family never lowers the bracket") {
    TestFunctionFamily small;
    small.kind = TestFunctionKind::TruncatedDual;
    small.grid = 17;
    TestFunctionFamily big = small;
    big.grid = 33;  // same range, every second point shared
    auto prob = classic_h1();
    auto b1 = maximize_quotient(small, prob);
    auto b2 = maximize_quotient(big, prob);
    CHECK(b2.lower >= b1.lower - 1e-12);
}

TEST_CASE("necessity spot check: condition within 10x of the observed quotient") {
    // a handful of configurations; the condition never exceeds 10x the bracket
    std::vector<EstimatorProblem> probs;
    probs.push_back(classic_h1());
    {
        // balanced pair: U ~ x^{-1.5}, V ~ x^{1.5}, A_M = 2/3 everywhere
        EstimatorProblem prob;
        prob.kind = InequalityKind::H1;
        prob.u = WeightSpec::power(-2.5, kPos);
        prob.v = {WeightSpec::power(-0.5, kPos)};
        prob.p = {2.0};
        prob.q = 2.0;
        probs.push_back(prob);
    }
    TestFunctionFamily fam;
    fam.kind = TestFunctionKind::TruncatedDual;
    for (const auto& prob : probs) {
        auto br = maximize_quotient(fam, prob);
        if (!br.condition_infinite) CHECK(br.condition_value <= 10.0 * br.lower);
    }
}

TEST_CASE("power-cut family centers on the dual exponent") {
    TestFunctionFamily fam;
    fam.kind = TestFunctionKind::PowerCut;
    auto prob = classic_h1();
    auto members = build_family(fam, prob, 0);
    CHECK(members.size() == 9u * 9u);
    auto br = maximize_quotient(fam, prob);
    CHECK(br.lower >= std::sqrt(2.0) - 1e-3);  // theta = 0 member is the extremizer
}

TEST_CASE("plateau family and degenerate member skipping") {
    TestFunctionFamily fam;
    fam.kind = TestFunctionKind::Plateau;
    auto prob = classic_h1();
    auto br = maximize_quotient(fam, prob);
    CHECK(br.evaluated > 0);
    CHECK(br.lower > 0.0);

    // custom family with an all-degenerate member set
    TestFunctionFamily degenerate;
    degenerate.kind = TestFunctionKind::Custom;
    degenerate.custom = {WeightSpec::constant(0.0, kPos)};
    CHECK_THROWS_AS(maximize_quotient(degenerate, prob), AllSamplesDegenerate);
}
