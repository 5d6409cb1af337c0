#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "lipbvp/serialization.hpp"

using namespace lipbvp;
using Catch::Approx;

TEST_CASE("non-finite numbers") {
    REQUIRE(number_json(std::numeric_limits<double>::infinity()) == "inf");
    REQUIRE(number_json(-std::numeric_limits<double>::infinity()) == "-inf");
    REQUIRE(number_json(std::nan("")).is_null());
    REQUIRE(number_json(1.5) == 1.5);
}

TEST_CASE("weight specs") {
    REQUIRE(weight_from_spec("power:0.5")(4.0) == Approx(2.0));
    REQUIRE(weight_from_spec("power:1,3")(2.0) == Approx(6.0));
    REQUIRE(weight_from_spec("power_log:1").kind() == Weight::Kind::PowerLog);
    REQUIRE(weight_from_spec("log_cap").kind() == Weight::Kind::LogCap);
    REQUIRE(weight_from_spec("one")(7.0) == 1.0);
    for (const char* bad : {"power", "power:x", "power:1,2,3", "cubic:1", "power:1,-1", "log_cap:0"})
        REQUIRE_THROWS_AS(weight_from_spec(bad), SpecError);
    const Json j = to_json(Weight::power_log(0.3, 2.0));
    REQUIRE(weight_from_json(j).inner() == 2.0);
    REQUIRE(weight_from_json(j).beta() == 0.3);
}

TEST_CASE("datum specs") {
    const auto ind = datum_from_spec("indicator:-1,1");
    REQUIRE(ind(0.0) == 1.0);
    REQUIRE(ind(1.5) == 0.0);
    REQUIRE(datum_from_spec("const:2").constant_value() == 2.0);
    REQUIRE(datum_from_spec("bump:0,1")(0.0) == Approx(1.0));
    REQUIRE(datum_from_spec("hat:0,1,2")(0.5) == Approx(0.5));
    REQUIRE(datum_from_spec("pl:0,0,1,2,2,0")(1.5) == Approx(1.0));
    const auto atom = datum_from_spec("atom:0,1", Weight::one());
    REQUIRE(atom(-0.5) == Approx(0.5));
    REQUIRE(atom(0.5) == Approx(-0.5));
    for (const char* bad : {"indicator:1,-1", "hat:0,2,1", "pl:0,1", "bump:0,0", "nope", "indicator:1"})
        REQUIRE_THROWS_AS(datum_from_spec(bad), SpecError);
}

TEST_CASE("datum JSON round trip") {
    const auto f = BoundaryFunction::piecewise_linear({-1.0, 0.0, 2.0}, {0.0, 1.0, 0.0});
    const auto g = datum_from_json(to_json(f));
    for (double t : {-0.5, 0.3, 1.9}) REQUIRE(g(t) == f(t));
    const auto h = datum_from_json(Json::parse(R"({"type":"indicator","a":0,"b":2,"height":3})"));
    REQUIRE(h(1.0) == 3.0);
    REQUIRE_THROWS_AS(datum_from_json(Json::parse(R"({"type":"indicator","a":0})")), SpecError);
}

TEST_CASE("CSV fields") {
    REQUIRE(csv_field("plain") == "plain");
    REQUIRE(csv_field("a,b") == "\"a,b\"");
    REQUIRE(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    REQUIRE(csv_number(0.1) == "0.1");
    REQUIRE(std::stod(csv_number(1.0 / 3.0)) == 1.0 / 3.0);
    REQUIRE(csv_number(std::numeric_limits<double>::infinity()) == "inf");
}
