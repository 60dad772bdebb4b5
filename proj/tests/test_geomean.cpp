#include <doctest.h>

#include <cmath>
#include <random>

#include "hardykit/geomean.hpp"

using namespace hardykit;

namespace {

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long long seed) : gen(seed) {}
    double uniform(double lo, double hi) {
        double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
};

const Interval kPos(0.0, kInf);

}  // namespace

TEST_CASE("averaging operator oracles") {
    CHECK(averaging_A(WeightSpec::constant(3.5, kPos), 17.0) == doctest::Approx(3.5));
    CHECK(averaging_A(WeightSpec::power(1.0, kPos), 2.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(averaging_A(WeightSpec::power(-2.0, kPos), 1.0), DivergentTail);
}

TEST_CASE("geometric mean operator oracles") {
    CHECK(geomean_T(WeightSpec::constant(5.0, kPos), 3.0) == doctest::Approx(5.0).epsilon(1e-12));
    // T(t)(x) = x/e
    CHECK(geomean_T(WeightSpec::power(1.0, kPos), 1.0) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(geomean_T(WeightSpec::power(1.0, kPos), std::exp(1.0)) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("T is multiplicative and homogeneous") {
    Rng rng(42);
    for (int i = 0; i < 50; ++i) {
        double lam = rng.uniform(-0.5, 1.5);
        double kap = rng.uniform(-0.8, 0.8);
        double x = rng.uniform(0.2, 5.0);
        auto f = WeightSpec::power(lam, kPos, 1.3);
        auto g = WeightSpec::exponential(kap, kPos, 0.7);
        auto fg = WeightSpec::product({f, g}, kPos);
        CHECK(geomean_T(fg, x) ==
              doctest::Approx(geomean_T(f, x) * geomean_T(g, x)).epsilon(1e-9));
    }
    // homogeneity: T(c f) = c T(f)
    auto f = WeightSpec::power(0.7, kPos);
    double base = geomean_T(f, 2.5);
    for (double c : {0.25, 3.0, 40.0})
        CHECK(geomean_T(f.scaled(c), 2.5) == doctest::Approx(c * base).epsilon(1e-12));
}

TEST_CASE("arithmetic mean dominates geometric mean") {
    Rng rng(7);
    for (int i = 0; i < 25; ++i) {
        double lam = rng.uniform(0.0, 2.0);
        double x = rng.uniform(0.1, 10.0);
        auto f = WeightSpec::power(lam, kPos, rng.uniform(0.5, 2.0));
        CHECK(geomean_T(f, x) <= averaging_A(f, x) * (1.0 + 1e-12));
    }
}

TEST_CASE("power-mean limit approaches T") {
    auto f = WeightSpec::power(1.0, kPos);
    // closed form: lhs = (1/(1+alpha))^{1/alpha} -> 1/e
    auto r = limit_check_LHA(f, 1.0, 1e-3);
    CHECK(r.rhs == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(r.lhs == doctest::Approx(std::pow(1.0 / 1.001, 1000.0)).epsilon(1e-9));
    CHECK(r.gap <= 1e-3);

    double prev = kInf;
    for (double alpha : {0.1, 0.01, 0.001}) {
        double gap = limit_check_LHA(f, 1.0, alpha).gap;
        CHECK(gap < prev);
        prev = gap;
    }

    // exact for constants at any alpha
    CHECK(limit_check_LHA(WeightSpec::constant(5.0, kPos), 2.0, 0.1).gap <= 1e-10);
}

TEST_CASE("log integrability guard") {
    // vanishing on (0, 1/2) makes ln f non-integrable from 0
    auto f = WeightSpec::indicator(Interval(0.5, kInf), kPos);
    CHECK_THROWS_AS(geomean_T(f, 1.0), LogNotIntegrable);
}

TEST_CASE("reciprocal geomean power forms") {
    auto c = reciprocal_geomean_power(WeightSpec::constant(4.0, kPos), 2.0);
    REQUIRE(c);
    CHECK((*c)(1.0) == doctest::Approx(1.0 / 16.0));

    auto p = reciprocal_geomean_power(WeightSpec::power(2.0, kPos), 1.0);
    REQUIRE(p);
    // T(1/t^2)(x) = e^2 x^{-2}
    CHECK((*p)(3.0) == doctest::Approx(std::exp(2.0) / 9.0).epsilon(1e-12));
    // and it matches the operator itself
    auto inv = WeightSpec::power(-2.0, kPos);
    CHECK((*p)(3.0) == doctest::Approx(geomean_T(inv, 3.0)).epsilon(1e-10));
}

TEST_CASE("scriptB oracles") {
    auto u_ind = WeightSpec::indicator(Interval(0.0, 1.0), kPos);
    auto one = WeightSpec::constant(1.0, kPos);

    auto b = condition_scriptB(u_ind, one, 2.0, 2.0);
    CHECK(b.converged);
    CHECK(b.value.as_double() == doctest::Approx(1.0).epsilon(1e-9));

    // v = 4 halves the value at p = 2
    auto b4 = condition_scriptB(u_ind, WeightSpec::constant(4.0, kPos), 2.0, 2.0);
    CHECK(b4.value.as_double() == doctest::Approx(0.5).epsilon(1e-9));

    // exact cancellation on the whole axis
    auto ball = condition_scriptB(one, one, 2.0, 2.0);
    CHECK(ball.value.as_double() == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(condition_scriptB(u_ind, one, 2.0, 1.5), ExponentOutOfRange);
}

TEST_CASE("bilinear scriptB oracles") {
    auto one = WeightSpec::constant(1.0, kPos);
    auto u = WeightSpec::product({WeightSpec::power(3.0, kPos),
                                  WeightSpec::indicator(Interval(0.0, 1.0), kPos)},
                                 kPos);
    auto b = condition_scriptB_bilinear(u, one, one, 2.0, 2.0, 4.0);
    CHECK(b.converged);
    CHECK(b.value.as_double() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));

    // indicator weight alone diverges at 0 for q = 4
    auto u_ind = WeightSpec::indicator(Interval(0.0, 1.0), kPos);
    auto binf = condition_scriptB_bilinear(u_ind, one, one, 2.0, 2.0, 4.0);
    CHECK(binf.value.is_infinite());

    CHECK_THROWS_AS(condition_scriptB_bilinear(u, one, one, 2.0, 2.0, 2.0), ExponentOutOfRange);
}
