#include "morsekit/app/config.hpp"
#include "morsekit/io/json.hpp"

#include <doctest.h>

using namespace morsekit;
using rings::Integer;
using rings::NovikovSeries;

TEST_CASE("series round trip") {
    const auto s = NovikovSeries::from_coeffs(-1, {Integer(3), Integer(0), Integer(-2)}, 5);
    const auto j = io::series_json(s);
    CHECK(j["valuation"] == -1);
    CHECK(j["coeffs"] == nlohmann::json::array({3, 0, -2}));
    CHECK(j["order"] == 5);
    CHECK(io::series_from_json(j) == s);
    CHECK(io::series_from_json(io::series_json(NovikovSeries::zero(4))) == NovikovSeries::zero(4));
    const Integer big("123456789012345678901234567890");
    CHECK(io::series_from_json(io::series_json(NovikovSeries::monomial(big, 2))) == NovikovSeries::monomial(big, 2));
    CHECK_THROWS_AS(io::series_from_json({{"valuation", "x"}}), Error);
}

TEST_CASE("complex serialization uses sparse triplets per degree") {
    homalg::IntMatrix d(1, 2);
    d(0, 1) = -2;
    const homalg::IntComplex c({{"p"}, {"q", "r"}}, {d});
    const auto j = io::complex_json(c);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["degree"] == 0);
    CHECK(j[0]["boundary"].empty());
    CHECK(j[1]["basis"] == nlohmann::json::array({"q", "r"}));
    CHECK(j[1]["boundary"] == nlohmann::json::array({nlohmann::json::array({0, 1, -2})}));
}

TEST_CASE("scene references") {
    const auto s = app::load_scene("torus_circle_valued");
    CHECK(s.scene);
    CHECK(s.lambda({}) == 1.0);
    app::RunConfig c;
    c.lambda = 1.37;
    CHECK(s.lambda(c) == 1.37);
    const auto m = app::load_scene("mapping_torus");
    CHECK(m.torus);
    CHECK(m.lambda({}) == 0.3);
    CHECK_THROWS_AS(app::load_scene("nonexistent_family"), Error);
    CHECK_THROWS_AS(app::load_scene("torus_product", 0.0), Error);
    const auto scaled = app::load_scene("torus_product", 0.5);
    CHECK(scaled.scene->options().tolerance == doctest::Approx(0.5e-9));
}
