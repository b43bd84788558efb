#include "morsekit/flow/polyline.hpp"
#include "morsekit/flow/separatrix.hpp"
#include "morsekit/flow/validate.hpp"

#include <doctest.h>

#include <cmath>

using namespace morsekit;
using namespace morsekit::flow;

namespace {

std::array<int, 3> counts(const Scene& s) {
    return {static_cast<int>(s.of_index(0).size()), static_cast<int>(s.of_index(1).size()), static_cast<int>(s.of_index(2).size())};
}

} // namespace

TEST_CASE("critical points and euler characteristic") {
    for (const auto& name : scene_families()) {
        const auto s = make_scene(name);
        const auto c = counts(s);
        CAPTURE(name);
        CHECK(c[0] - c[1] + c[2] == s.model().euler_characteristic());
        for (const auto& p : s.critical_points()) {
            CHECK(s.v(p.position).norm() < 1e-8);
            if (p.index == 1) CHECK(p.eigenvalues[0] * p.eigenvalues[1] < 0);
        }
    }
    CHECK(counts(make_scene("sphere_height")) == std::array<int, 3>{1, 0, 1});
    CHECK(counts(make_scene("torus_product")) == std::array<int, 3>{1, 2, 1});
    CHECK(counts(make_scene("genus2_height")) == std::array<int, 3>{1, 4, 1});
    CHECK(counts(make_scene("torus_product", {{"freq_x", 2}})) == std::array<int, 3>{2, 4, 2});
}

TEST_CASE("validation of f-gradients") {
    for (const auto& name : scene_families()) {
        CAPTURE(name);
        CHECK(validate_f_gradient(make_scene(name), 24).pass());
    }
    const auto s = make_scene("torus_product");
    const auto neg = s.with_field(std::make_shared<ScaledField>(s.field_ptr(), -1.0));
    const auto r = validate_f_gradient(neg, 24);
    CHECK_FALSE(r.condition_a());
    CHECK(r.a_witness.has_value());

    const auto q = s.of_index(1).front();
    const auto rot = s.with_field(std::make_shared<RotatedSaddleField>(s, q));
    CHECK(rot.v(s.critical(q).position).norm() < 1e-12);
    const auto rr = validate_f_gradient(rot, 24);
    CHECK_FALSE(rr.condition_b());
    for (const auto& c : rr.b_checks)
        if (c.id != s.critical(q).id) CHECK(c.pass);
}

TEST_CASE("sphere descent from the maximum region reaches the minimum") {
    const auto s = make_scene("sphere_height");
    const auto top = s.of_index(2).front();
    const Vec3 start = s.model().project(s.critical(top).position + Vec3(0.05, 0.03, 0));
    const auto t = trace(s, start, Direction::Descending, {});
    CHECK(t.terminus.kind == TerminusKind::Critical);
    CHECK(s.critical(t.terminus.critical).index == 0);
    for (std::size_t i = 1; i < t.samples.size(); ++i) CHECK(s.f(t.samples[i]) <= s.f(t.samples[i - 1]) + 1e-12);
    CHECK_THROWS_AS(trace(s.with_options([&] {
                              auto o = s.options();
                              o.max_arclength = 1e-3;
                              return o;
                          }()),
                          start, Direction::Descending, {}),
                    Error);
}

TEST_CASE("torus separatrices") {
    const auto s = make_scene("torus_product");
    const auto seps = extract_separatrices(s);
    CHECK(seps.size() == 8);
    for (const auto& sep : seps) {
        CHECK(sep.terminus.kind == TerminusKind::Critical);
        CHECK(sep.sign != 0);
        CHECK(std::abs(s.f(sep.samples.back()) - s.critical(sep.terminus.critical).value) < 1e-2);
    }
    CHECK(check_almost_transversality(s, seps).pass);
    const auto standing = check_almost_transversality(make_scene("torus_standing"));
    CHECK_FALSE(standing.pass);
    CHECK_FALSE(standing.connections.empty());
    CHECK(check_almost_transversality(make_scene("genus2_height")).pass);
}

TEST_CASE("perturbations stay f-gradients and keep the zeros") {
    const auto s = make_scene("torus_product");
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto p = perturb(s, seed, 0.05);
        for (const auto& c : s.critical_points()) CHECK(p.v(c.position).norm() < 1e-12);
        const Vec3 x(0.31, 0.77, 0);
        CHECK((p.v(x) - s.v(x)).norm() <= 0.05 + 1e-12);
    }
    CHECK(perturb(s, 3, 0.05).v(Vec3(0.31, 0.77, 0)) == perturb(s, 3, 0.05).v(Vec3(0.31, 0.77, 0)));
}

TEST_CASE("tolerance halving changes termini by less than the tolerance scale") {
    const auto s = make_scene("genus2_height");
    auto o = s.options();
    o.tolerance *= 0.5;
    const auto h = s.with_options(o);
    for (auto q : s.of_index(1))
        for (int b : {-1, 1}) {
            const auto a1 = trace_branch(s, q, Direction::Descending, b);
            const auto a2 = trace_branch(h, q, Direction::Descending, b);
            CHECK(a1.terminus.critical == a2.terminus.critical);
            CHECK(a1.sign == a2.sign);
        }
}

TEST_CASE("polyline crossings") {
    const Polyline a = {{0.1, 0.5, 0}, {0.9, 0.5, 0}};
    const Polyline b = {{0.5, 0.1, 0}, {0.5, 0.9, 0}};
    const auto c = crossings(a, b, false);
    REQUIRE(c.size() == 1);
    CHECK(c[0].sign == 1);
    CHECK(crossings(b, a, false)[0].sign == -1);
    const Polyline shifted = {{1.5, 0.1, 0}, {1.5, 0.9, 0}};
    CHECK(crossings(a, shifted, false).empty());
    const Polyline wide = {{-0.2, 0.5, 0}, {0.9, 0.5, 0}};
    CHECK(crossings(wide, shifted, true).size() == 1);
    const Polyline overlap = {{0.2, 0.5, 0}, {0.7, 0.5, 0}};
    CHECK_THROWS_AS(crossings(a, overlap, false), Error);
    CHECK(distance_to_polyline({0.5, 0.6, 0}, a, false) == doctest::Approx(0.1));
}
