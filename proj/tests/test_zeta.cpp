#include "morsekit/novikov/novikov.hpp"
#include "morsekit/zeta/zeta.hpp"

#include <doctest.h>

using namespace morsekit;
using namespace morsekit::zeta;

namespace {

rings::WittUnit rational_expansion(std::vector<long long> num, std::vector<long long> den, int order) {
    rings::TruncatedSeries<rings::Integer> n(order + 1), d(order + 1);
    for (std::size_t i = 0; i < num.size(); ++i) n[static_cast<int>(i)] = num[i];
    for (std::size_t i = 0; i < den.size(); ++i) d[static_cast<int>(i)] = den[i];
    return rings::WittUnit(n * d.inverse());
}

std::vector<long long> trace_oracle(int order) {
    // tr A^n for A = [[2,1],[1,1]]: 3, 7, then tr_{n+1} = 3 tr_n - tr_{n-1}
    std::vector<long long> tr = {2, 3};
    while (static_cast<int>(tr.size()) <= order) tr.push_back(3 * tr.back() - tr[tr.size() - 2]);
    std::vector<long long> out;
    for (int n = 1; n <= order; ++n) out.push_back(2 - tr[static_cast<std::size_t>(n)]);
    return out;
}

} // namespace

TEST_CASE("zeta series from counts") {
    CHECK(zeta_series({0, 0, 0, 0}, 4).is_one());
    CHECK(zeta_series({1, 1, 1, 1, 1, 1}, 6) == rational_expansion({1}, {1, -1}, 6));
    CHECK_THROWS_AS(zeta_series({1, 0}, 2), Error);
}

TEST_CASE("cat map mapping torus") {
    const auto m = MappingTorus::from_json({{"monodromy", {{2, 1}, {1, 1}}}});
    const auto rm = ReturnMap::of_mapping_torus(m, 0.3);
    const auto counts = lefschetz_counts(rm, 8);
    CHECK(counts == trace_oracle(8));
    CHECK(counts == homological_lefschetz(m, 8));
    CHECK(std::vector<long long>(counts.begin(), counts.begin() + 3) == std::vector<long long>{-1, -5, -16});
    CHECK(zeta_series(counts, 8) == rational_expansion({1, -3, 1}, {1, -2, 1}, 8));
}

TEST_CASE("perturbed cat map keeps its counts") {
    const auto m = MappingTorus::from_json({{"monodromy", {{2, 1}, {1, 1}}}, {"drift", 0.03}});
    const auto rm = ReturnMap::of_mapping_torus(m, 0.3);
    const auto fp = fixed_points(rm, 3);
    CHECK(fp.size() == 16);
    CHECK(lefschetz_counts(rm, 5) == trace_oracle(5));
}

TEST_CASE("degree-2 circle map mapping torus") {
    for (double drift : {0.0, 0.05}) {
        CAPTURE(drift);
        const auto m = MappingTorus::from_json({{"circle_degree", 2}, {"amplitude", 0.3}, {"drift", drift}});
        const auto counts = lefschetz_counts(ReturnMap::of_mapping_torus(m, 0.3), 8);
        CHECK(counts == homological_lefschetz(m, 8));
        CHECK(counts[2] == 1 - 8);
        CHECK(zeta_series(counts, 8) == rational_expansion({1, -2}, {1, -1}, 8));
    }
    CHECK_THROWS_AS(fixed_points(ReturnMap::of_mapping_torus(MappingTorus::from_json({{"monodromy", {{1, 0}, {0, 1}}}}), 0.3), 1), Error);
}

TEST_CASE("return map of the two-point scene") {
    const auto s = flow::make_scene("torus_circle_valued");
    const auto rm = ReturnMap::of_scene(s, 1.0, 64);
    CHECK(rm.domain_boundary(1).size() == 1);
    const auto a = zeta_report(rm, 8);
    CHECK(a.zeta == rational_expansion({1}, {1, -1}, 8));
    const auto b = zeta_report(ReturnMap::of_scene(s, 1.37, 64), 8);
    CHECK(a.counts == b.counts);
    CHECK(zeta_report(ReturnMap::of_scene(s, 1.0, 128), 4).counts == std::vector<long long>(a.counts.begin(), a.counts.begin() + 4));
}

TEST_CASE("lambda independence for four critical points") {
    const auto s = flow::make_scene("torus_circle_valued", {{"k", 2}});
    CHECK(lefschetz_counts(ReturnMap::of_scene(s, 1.1, 64), 5) == lefschetz_counts(ReturnMap::of_scene(s, 1.25, 64), 5));
    CHECK_THROWS_AS(ReturnMap::of_scene(s, 1.33, 64), Error);
    CHECK_THROWS_AS(ReturnMap::of_scene(s, s.critical(0).value + 1, 64), Error);
}

TEST_CASE("fibration return map") {
    const auto s = flow::make_scene("torus_circle_valued", {{"k", 0}, {"c", 0.2}});
    const auto rm = ReturnMap::of_scene(s, 1.0, 64);
    CHECK(rm.domain_boundary(3).empty());
    const auto fp = fixed_points(rm, 1);
    CHECK(fp.size() == 2);
    CHECK(zeta_report(rm, 6).zeta.is_one());
}
