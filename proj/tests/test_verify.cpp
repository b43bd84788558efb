#include "morsekit/homalg/homology.hpp"
#include "morsekit/verify/verify.hpp"

#include <doctest.h>

#include <iostream>

using namespace morsekit;
using namespace morsekit::verify;

namespace {

rings::WittUnit rational_expansion(std::vector<long long> num, std::vector<long long> den, int order) {
    rings::TruncatedSeries<rings::Integer> n(order + 1), d(order + 1);
    for (std::size_t i = 0; i < num.size(); ++i) n[static_cast<int>(i)] = num[i];
    for (std::size_t i = 0; i < den.size(); ++i) d[static_cast<int>(i)] = den[i];
    return rings::WittUnit(n * d.inverse());
}

flow::Scene circle(int k) { return flow::make_scene("torus_circle_valued", {{"k", k}}); }

} // namespace

TEST_CASE("cell structures") {
    const auto g = grid_cells(3, 2, 0.1, 0.2);
    CHECK(g.euler_characteristic() == 0);
    CHECK(homalg::novikov_homology_ranks(g.complex) == std::vector<int>{0, 0, 0});
    const auto cat = fiber_cells(zeta::MappingTorus::from_json({{"monodromy", {{2, 1}, {1, 1}}}}));
    CHECK(cat.euler_characteristic() == 0);
    CHECK_THROWS_AS(fiber_cells(zeta::MappingTorus::from_json({{"monodromy", {{2, 1}, {1, 1}}}}), 2), Error);
    for (int n : {1, 3}) {
        const auto c = fiber_cells(zeta::MappingTorus::from_json({{"circle_degree", 2}}), n);
        CHECK(c.complex.rank(1) == static_cast<std::size_t>(2 * n));
    }
}

TEST_CASE("two-point scene") {
    const auto s = circle(1);
    for (double lambda : {1.0, 1.37}) {
        CAPTURE(lambda);
        const auto xi = schutz_map(s, lambda, default_grid(s), 12);
        const auto cone = homalg::mapping_cone(xi);
        CHECK(homalg::novikov_homology_ranks(cone) == std::vector<int>{0, 0, 0, 0});
        const auto w = torsion_w(xi, 8);
        CHECK(w == rational_expansion({1, -1}, {1}, 8));
        const auto v = check_torsion_zeta(s, default_grid(s), lambda, 8);
        CHECK(v.pass);
        CHECK(v.applicable);
    }
    const auto fine = check_torsion_zeta(s, grid_cells(5, 4, 0.021, 0.033), 1.0, 8);
    CHECK(fine.pass);
}

TEST_CASE("k = 2 scene") {
    const auto s = circle(2);
    const auto v = check_torsion_zeta(s, default_grid(s), 1.1, 8);
    CHECK(v.diagnostic == "");
    CHECK(v.pass);
}

TEST_CASE("cat map mapping torus") {
    const auto m = zeta::MappingTorus::from_json({{"monodromy", {{2, 1}, {1, 1}}}});
    const auto v = check_torsion_zeta(m, fiber_cells(m), 0.3, 8);
    CHECK(v.diagnostic == "");
    REQUIRE(v.w);
    CHECK(*v.w == rational_expansion({1, -2, 1}, {1, -3, 1}, 8));
    CHECK(v.pass);
}

TEST_CASE("degree-2 circle mapping torus") {
    const auto m = zeta::MappingTorus::from_json({{"circle_degree", 2}, {"amplitude", 0.3}});
    for (int n : {1, 3}) {
        CAPTURE(n);
        const auto v = check_torsion_zeta(m, fiber_cells(m, n), 0.3, 8);
        CHECK(v.diagnostic == "");
        REQUIRE(v.w);
        CHECK(*v.w == rational_expansion({1, -1}, {1, -2}, 8));
        CHECK(v.pass);
    }
}

TEST_CASE("identity monodromy is not applicable") {
    const auto m = zeta::MappingTorus::from_json({{"monodromy", {{1, 0}, {0, 1}}}});
    const auto v = check_torsion_zeta(m, fiber_cells(m), 0.3, 8);
    CHECK_FALSE(v.applicable);
    CHECK_FALSE(v.pass);
}

TEST_CASE("cone of an identity has trivial torsion") {
    const auto g = grid_cells(2, 2, 0.1, 0.2);
    const auto w = torsion_w(NovikovChainMap::identity(g.complex), 8);
    CHECK(w.is_one());
}

TEST_CASE("verdict json") {
    const auto m = zeta::MappingTorus::from_json({{"circle_degree", 2}});
    const auto j = to_json(check_torsion_zeta(m, fiber_cells(m), 0.3, 4));
    CHECK(j["pass"] == true);
    CHECK(j["first_mismatch"].is_null());
    CHECK(j["order"] == 4);
}
