#include "morsekit/homalg/homology.hpp"
#include "morsekit/novikov/novikov.hpp"

#include <doctest.h>

using namespace morsekit;
using namespace morsekit::novikov;
using rings::NovikovSeries;

namespace {

NovikovSeries poly(std::vector<int> c, int precision) {
    std::vector<rings::Integer> z(c.begin(), c.end());
    return NovikovSeries::from_coeffs(0, z, precision);
}

flow::Scene circle(int k) { return flow::make_scene("torus_circle_valued", {{"k", k}}); }

} // namespace

TEST_CASE("novikov complex of the two-point scene") {
    const auto s = circle(1);
    const auto c = build_novikov_complex(s, 1.0, 8);
    REQUIRE(c.rank(2) == 1);
    REQUIRE(c.rank(1) == 1);
    CHECK(c.rank(0) == 0);
    CHECK(c.boundary(2)(0, 0) == poly({-1, 1}, 9));
    const auto h = homalg::novikov_homology(c);
    CHECK(h.ranks == std::vector<int>{0, 0, 0});
    for (const auto& t : h.torsion) CHECK(t.empty());
    CHECK_THROWS_AS(build_novikov_complex(s, s.critical(0).value + 3, 8), Error);
    CHECK_THROWS_AS(build_novikov_complex(flow::make_scene("torus_product"), 1.0, 8), Error);
}

TEST_CASE("fibration has an empty novikov complex") {
    const auto s = circle(0);
    CHECK(s.critical_points().empty());
    const auto c = build_novikov_complex(s, 1.0, 8);
    CHECK(c.total_rank() == 0);
    const auto r = truncation_tower_check(s, 1.0, 3, &c);
    CHECK(r.pass());
    CHECK(truncation_tower_check(s, 1.0, 0, &c).pass());
}

TEST_CASE("truncation tower") {
    for (auto [k, lambda] : {std::pair{1, 1.0}, std::pair{1, 1.37}, std::pair{2, 1.25}, std::pair{2, 1.33}}) {
        CAPTURE(k);
        CAPTURE(lambda);
        const auto s = circle(k);
        const auto c = build_novikov_complex(s, lambda, 8);
        c.check_square_zero(9);
        for (int n = 1; n <= 4; ++n) {
            const auto r = truncation_tower_check(s, lambda, n, &c);
            CAPTURE(n);
            CHECK(r.boundaries_equal);
            CHECK(r.homology_equal);
        }
    }
}

TEST_CASE("boundary series do not depend on lambda in a regular interval") {
    CHECK(basis_preserving_equal(build_novikov_complex(circle(1), 1.0, 8), build_novikov_complex(circle(1), 1.37, 8), 9));
    CHECK(basis_preserving_equal(build_novikov_complex(circle(2), 1.25, 8), build_novikov_complex(circle(2), 1.33, 8), 9));
    CHECK(basis_preserving_equal(build_novikov_complex(circle(2), 1.1, 8), build_novikov_complex(circle(2), 1.25, 8), 9));
}

TEST_CASE("boundary series survive a tolerance halving") {
    const auto s = circle(2);
    auto o = s.options();
    o.tolerance *= 0.5;
    CHECK(basis_preserving_equal(build_novikov_complex(s, 1.25, 8), build_novikov_complex(s.with_options(o), 1.25, 8), 9));
}

TEST_CASE("novikov induced maps") {
    const auto s = circle(1);
    const auto id = novikov_induced_map(morse::TorusMap::identity(), s, 1.0, s, 1.0, 6);
    for (int k = 1; k <= 2; ++k) CHECK(id.component(k)(0, 0) == poly({1}, 7));

    morse::TorusMap a;
    a.linear << 1, 0, 0, 2;
    a.offset = flow::Vec2(0.05, 0.11);
    const auto f = novikov_induced_map(a, s, 1.0, s, 1.0, 6);
    CHECK(f.component(2)(0, 0) == poly({2}, 7));
    CHECK(f.component(1)(0, 0) == poly({2}, 7));

    auto shifted = a;
    shifted.offset.x() -= 1;
    const auto g = novikov_induced_map(shifted, s, 1.0, s, 1.0, 6);
    for (int k = 1; k <= 2; ++k) CHECK(homalg::equal_to_order(g.component(k)(0, 0), NovikovSeries::monomial(1, 1) * f.component(k)(0, 0), 7));

    morse::TorusMap bad;
    bad.linear << 2, 0, 0, 1;
    CHECK_THROWS_AS(novikov_induced_map(bad, s, 1.0, s, 1.0, 6), Error);
}
