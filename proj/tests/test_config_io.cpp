#include <doctest.h>

#include "hardykit/config_io.hpp"

using namespace hardykit;

TEST_CASE("weight documents parse with inf tokens") {
    json j = json::parse(R"({"family":"power","lambda":-2.0,"interval":[1.0,"inf"]})");
    WeightSpec w = weight_from_json(j);
    CHECK(w.family() == WeightFamily::Power);
    CHECK(w.param_lambda() == -2.0);
    CHECK(w.interval().a == 1.0);
    CHECK(w.interval().upper_infinite());
    CHECK(w(2.0) == doctest::Approx(0.25));
}

TEST_CASE("unknown keys are hard errors") {
    json j = json::parse(R"({"family":"power","lamda":-2.0,"interval":[1.0,"inf"]})");
    CHECK_THROWS_AS(weight_from_json(j), ConfigInvalid);
    json q = json::parse(R"({"rel_tol":1e-10,"reltol":1e-8})");
    CHECK_THROWS_AS(quadrature_from_json(q), ConfigInvalid);
}

TEST_CASE("weight json round trip") {
    json j = json::parse(R"({
      "family":"product",
      "factors":[
        {"family":"power","lambda":3.0,"interval":[0.0,"inf"]},
        {"family":"indicator","support":[0.0,1.0],"interval":[0.0,"inf"]}
      ],
      "interval":[0.0,"inf"]})");
    WeightSpec w = weight_from_json(j);
    WeightSpec w2 = weight_from_json(weight_to_json(w));
    for (double x : {0.2, 0.8, 3.0}) CHECK(w(x) == w2(x));
}

TEST_CASE("piecewise and tabulated documents") {
    json j = json::parse(R"({
      "family":"piecewise",
      "pieces":[
        {"interval":[0.0,1.0],"weight":{"family":"constant","c":2.0,"interval":[0.0,"inf"]}},
        {"interval":[1.0,2.0],"weight":{"family":"power","lambda":1.0,"interval":[0.0,"inf"]}}
      ],
      "interval":[0.0,"inf"]})");
    WeightSpec w = weight_from_json(j);
    CHECK(w(0.5) == 2.0);
    CHECK(w(1.5) == doctest::Approx(1.5));

    json t = json::parse(R"({"family":"tabulated","points":[[1.0,1.0],[2.0,4.0]]})");
    WeightSpec tw = weight_from_json(t);
    CHECK(tw(1.5) == doctest::Approx(2.0));
}

TEST_CASE("toml subset maps onto the same document shape") {
    std::string toml = R"(
# run config
suite = "hardy-bilinear"
seed = 42

[weights.u]
family = "power"
lambda = -3.0
interval = [0.0, "inf"]

[weights.v1]
family = "constant"
c = 1.0
interval = [0.0, "inf"]

[weights.v2]
family = "constant"
c = 1.0
interval = [0.0, "inf"]

[exponents]
p1 = 2.0
p2 = 2.0
q = 2.0
)";
    json j = toml_to_json(toml);
    CHECK(j.at("suite") == "hardy-bilinear");
    CHECK(j.at("seed") == 42);
    CHECK(j.at("weights").at("u").at("lambda") == -3.0);
    CHECK(j.at("weights").at("u").at("interval")[1] == "inf");
    CHECK(j.at("exponents").at("q") == 2.0);
}

TEST_CASE("config hash is stable and key-order independent") {
    json a = json::parse(R"({"x":1,"y":[1,2,3]})");
    json b = json::parse(R"({"y":[1,2,3],"x":1})");
    CHECK(config_hash(a) == config_hash(b));
    json c = json::parse(R"({"x":2,"y":[1,2,3]})");
    CHECK(config_hash(a) != config_hash(c));
}
