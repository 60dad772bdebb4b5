#include <doctest.h>

#include <cmath>

#include "hardykit/sup_search.hpp"

using namespace hardykit;

namespace {

PointFn wrap(std::function<double(double)> f) {
    return [f = std::move(f)](double x) {
        EvalResult r;
        r.value = ExtReal::finite(f(x));
        return r;
    };
}

}  // namespace

TEST_CASE("sup of a constant function") {
    auto est = estimate_sup(wrap([](double) { return 1.0; }), Interval(0.0, kInf));
    CHECK(est.value.as_double() == doctest::Approx(1.0));
    CHECK(est.converged);
    // ties resolve to the smallest sampled x
    CHECK(est.witness < 2e-8);
}

TEST_CASE("sup of a single interior peak") {
    // sqrt(x - x^2) peaks at x = 1/2 with value 1/2
    auto f = [](double x) { return x < 1.0 ? std::sqrt(x * (1.0 - x)) : 0.0; };
    auto est = estimate_sup(wrap(f), Interval(0.0, kInf));
    CHECK(est.converged);
    CHECK(est.value.as_double() == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(est.witness == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("sup on finite intervals") {
    auto est = estimate_sup(wrap([](double x) { return x * (3.0 - x); }), Interval(0.0, 3.0));
    CHECK(est.value.as_double() == doctest::Approx(2.25).epsilon(1e-8));

    // supremum attained in the endpoint limit
    auto est2 = estimate_sup(wrap([](double x) { return 1.0 - x; }), Interval(0.0, 1.0));
    CHECK(est2.value.as_double() == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("endpoint growth declares +inf") {
    auto est = estimate_sup(wrap([](double x) { return std::pow(x, 0.3); }), Interval(0.0, kInf));
    CHECK(est.value.is_infinite());
    CHECK(est.endpoint_divergence);

    auto est2 = estimate_sup(wrap([](double x) { return std::pow(x, -0.4); }), Interval(0.0, kInf));
    CHECK(est2.value.is_infinite());
    CHECK(est2.endpoint_divergence);
}

TEST_CASE("tiny maxima report zero with a flag") {
    auto est = estimate_sup(wrap([](double) { return 1e-18; }), Interval(0.0, kInf));
    CHECK(est.value.as_double() == 0.0);
    CHECK(est.below_abs_tol);
}

TEST_CASE("pointwise infinity short-circuits") {
    PointFn f = [](double x) {
        EvalResult r;
        if (x > 1.0 && x < 3.0) {
            r.value = ExtReal::infinity();
            r.divergent_inner = true;
        } else {
            r.value = ExtReal::finite(1.0);
        }
        return r;
    };
    auto est = estimate_sup(f, Interval(0.0, kInf));
    CHECK(est.value.is_infinite());
    CHECK(est.divergent_inner);
}

TEST_CASE("shrinking sub-interval approaches the pointwise value") {
    auto f = [](double x) { return std::exp(-(x - 2.0) * (x - 2.0)); };
    double at2 = f(2.0);
    auto est = estimate_sup(wrap(f), Interval(2.0 - 1e-9, 2.0 + 1e-9));
    CHECK(est.value.as_double() == doctest::Approx(at2).epsilon(1e-9));
}

TEST_CASE("large quadrature uncertainty blocks convergence") {
    PointFn f = [](double x) {
        EvalResult r;
        r.value = ExtReal::finite(1.0 / (1.0 + x));
        r.rel_err = 0.5;  // propagated from loose inner integrals
        return r;
    };
    auto est = estimate_sup(f, Interval(0.0, kInf));
    CHECK_FALSE(est.converged);
    CHECK(est.worst_rel_err == doctest::Approx(0.5));
}
