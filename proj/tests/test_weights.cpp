#include <doctest.h>

#include <cmath>
#include <random>

#include "hardykit/weights.hpp"

using namespace hardykit;

namespace {

// deterministic uniforms independent of libstdc++ distribution internals
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long long seed) : gen(seed) {}
    double uniform(double lo, double hi) {
        double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
};

}  // namespace

TEST_CASE("eval_weight basic families") {
    Interval r01(0.0, 1.0);
    Interval rpos(0.0, kInf);

    CHECK(WeightSpec::constant(3.0, r01)(0.5) == 3.0);
    CHECK(WeightSpec::power(-2.0, Interval(1.0, kInf))(2.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(WeightSpec::indicator(Interval(0.0, 1.0), rpos)(2.0) == 0.0);
    CHECK(WeightSpec::exponential(-1.0, rpos)(0.0 + 2.0) == doctest::Approx(std::exp(-2.0)));

    CHECK_THROWS_AS(WeightSpec::constant(1.0, r01)(1.5), PointOutsideDomain);
    CHECK_THROWS_AS(WeightSpec::constant(1.0, r01)(0.0), PointOutsideDomain);
}

TEST_CASE("log-power declares its interior singularity") {
    auto w = WeightSpec::log_power(0.5, -1.0, Interval(0.0, kInf));
    REQUIRE(w.singular_points().size() == 1);
    CHECK(w.singular_points()[0] == 1.0);
    CHECK_THROWS_AS(w(1.0), SingularPoint);
    CHECK(w(2.0) == doctest::Approx(std::sqrt(2.0) / std::log(2.0)));
}

TEST_CASE("power_transform maps families and guards zero bases") {
    Interval r01(0.0, 1.0);
    auto p = WeightSpec::power(2.0, r01).pow(-1.0);
    CHECK(p.family() == WeightFamily::Power);
    CHECK(p.param_lambda() == -2.0);

    auto c = WeightSpec::constant(4.0, r01).pow(0.5);
    CHECK(c(0.3) == doctest::Approx(2.0));

    auto ind = WeightSpec::indicator(Interval(0.0, 1.0), Interval(0.0, kInf));
    CHECK_THROWS_AS(ind.pow(-1.0), NonpositiveBase);
}

TEST_CASE("power_transform commutes with evaluation") {
    Rng rng(2026);
    Interval iv(0.0, kInf);
    std::vector<WeightSpec> ws{
        WeightSpec::power(1.7, iv, 2.5),
        WeightSpec::exponential(-0.6, iv, 1.2),
        WeightSpec::constant(3.25, iv),
        WeightSpec::log_power(0.5, 2.0, iv),
        WeightSpec::tabulated({0.5, 1.0, 2.0, 4.0}, {1.0, 2.0, 0.5, 3.0}),
        WeightSpec::product({WeightSpec::power(0.5, iv), WeightSpec::exponential(0.1, iv)}, iv),
    };
    for (const auto& w : ws) {
        for (double r : {-1.5, -0.5, 0.5, 2.0}) {
            auto wr = w.pow(r);
            for (int i = 0; i < 25; ++i) {
                double x = rng.uniform(w.interval().a + 0.51, w.interval().a + 3.9);
                if (!w.interval().contains(x) || !wr.interval().contains(x)) continue;
                double direct = std::pow(w(x), r);
                CHECK(wr(x) == doctest::Approx(direct).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("closed-form families match the direct formula at random points") {
    Rng rng(77);
    Interval iv(0.0, kInf);
    auto w = WeightSpec::power(-1.3, iv, 0.7);
    auto e = WeightSpec::exponential(0.9, iv, 2.0);
    for (int i = 0; i < 100; ++i) {
        double x = rng.uniform(0.01, 50.0);
        CHECK(w(x) == doctest::Approx(0.7 * std::pow(x, -1.3)).epsilon(1e-14));
        CHECK(e(x) == doctest::Approx(2.0 * std::exp(0.9 * x)).epsilon(1e-14));
    }
}

TEST_CASE("conjugate exponent") {
    CHECK(conjugate(2.0).p_conj == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(conjugate(3.0).p_conj == doctest::Approx(1.5).epsilon(1e-15));
    CHECK_THROWS_AS(conjugate(1.0), ExponentOutOfRange);
    CHECK_THROWS_AS(conjugate(0.5), ExponentOutOfRange);

    // involution + conjugacy identity
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        double p = rng.uniform(1.01, 40.0);
        auto c = conjugate(p);
        CHECK(1.0 / c.p + 1.0 / c.p_conj == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(conjugate(c.p_conj).p_conj == doctest::Approx(p).epsilon(1e-14));
    }
}

TEST_CASE("piecewise and product evaluation") {
    Interval iv(0.0, kInf);
    auto pw = WeightSpec::piecewise(
        {{Interval(0.0, 1.0), WeightSpec::constant(2.0, iv)},
         {Interval(1.0, 3.0), WeightSpec::power(1.0, iv)}},
        iv);
    CHECK(pw(0.5) == 2.0);
    CHECK(pw(2.0) == 2.0);
    CHECK(pw(5.0) == 0.0);  // gap beyond the last piece

    auto prod = WeightSpec::product(
        {WeightSpec::power(3.0, iv), WeightSpec::indicator(Interval(0.0, 1.0), iv)}, iv);
    CHECK(prod(0.5) == doctest::Approx(0.125));
    CHECK(prod(2.0) == 0.0);
}

TEST_CASE("tabulated weights interpolate log-linearly when positive") {
    auto t = WeightSpec::tabulated({1.0, 2.0}, {1.0, 4.0});
    // halfway in x means the geometric mean of the endpoint values
    CHECK(t(1.5) == doctest::Approx(2.0).epsilon(1e-14));

    auto lin = WeightSpec::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
    CHECK(lin(0.25) == doctest::Approx(0.25));
    CHECK_THROWS_AS(lin.pow(-2.0), NonpositiveBase);
}

TEST_CASE("restriction multiplies by an indicator") {
    Interval iv(0.0, kInf);
    auto w = WeightSpec::power(1.0, iv).restricted(Interval(1.0, 2.0));
    CHECK(w(1.5) == doctest::Approx(1.5));
    CHECK(w(0.5) == 0.0);
    CHECK(w(3.0) == 0.0);
    auto cf = w.closed_form_integral(0.0, kInf);
    REQUIRE(cf.has_value());
    CHECK(cf->as_double() == doctest::Approx(1.5));  // int_1^2 t dt
}

TEST_CASE("closed-form integrals and divergence analysis") {
    Interval iv(0.0, kInf);
    auto p = WeightSpec::power(-2.0, Interval(1.0, kInf));
    CHECK(p.closed_form_integral(1.0, kInf)->as_double() == doctest::Approx(1.0));

    CHECK(WeightSpec::power(-2.0, iv).closed_form_integral(0.0, 1.0)->is_infinite());
    CHECK(WeightSpec::constant(1.0, iv).closed_form_integral(0.0, kInf)->is_infinite());
    CHECK(WeightSpec::exponential(-1.0, iv).closed_form_integral(0.0, kInf)->as_double() ==
          doctest::Approx(1.0));
    CHECK(WeightSpec::power(-1.0, iv).closed_form_integral(0.0, 1.0)->is_infinite());
}

TEST_CASE("log integrals in closed form") {
    Interval iv(0.0, kInf);
    // int_0^x ln(t) dt = x ln x - x
    auto p1 = WeightSpec::power(1.0, iv);
    CHECK(*p1.closed_form_log_integral(0.0, 1.0) == doctest::Approx(-1.0));
    CHECK(*p1.closed_form_log_integral(0.0, 2.0) == doctest::Approx(2.0 * std::log(2.0) - 2.0));

    auto c = WeightSpec::constant(5.0, iv);
    CHECK(*c.closed_form_log_integral(0.0, 3.0) == doctest::Approx(3.0 * std::log(5.0)));

    // vanishing on positive measure -> -inf
    auto ind = WeightSpec::indicator(Interval(1.0, 2.0), iv);
    CHECK(*ind.closed_form_log_integral(0.0, 1.5) == -kInf);
}
