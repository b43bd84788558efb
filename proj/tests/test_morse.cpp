#include "morsekit/morse/induced.hpp"
#include "morsekit/morse/morse_complex.hpp"

#include <doctest.h>

using namespace morsekit;
using namespace morsekit::morse;

namespace {

std::vector<int> betti(const flow::Scene& s) { return homalg::homology(build_morse_complex(s)).betti; }

homalg::Matrix<rings::Rational> on_h(const homalg::IntChainMap& f, int k) { return homalg::induced_on_homology(f, k); }

} // namespace

TEST_CASE("morse homology of the real-valued families") {
    CHECK(betti(flow::make_scene("sphere_height")) == std::vector<int>{1, 0, 1});
    CHECK(betti(flow::make_scene("torus_product")) == std::vector<int>{1, 2, 1});
    CHECK(betti(flow::make_scene("torus_product", {{"freq_x", 2}})) == std::vector<int>{1, 2, 1});
    CHECK(betti(flow::make_scene("genus2_height")) == std::vector<int>{1, 4, 1});
    const auto c = build_morse_complex(flow::make_scene("torus_product"));
    CHECK(c.boundary(1) == homalg::IntMatrix(c.rank(1 - 1), c.rank(1)));
    CHECK(c.boundary(2) == homalg::IntMatrix(c.rank(2 - 1), c.rank(2)));
    CHECK_THROWS_AS(build_morse_complex(flow::make_scene("torus_standing")), Error);
    CHECK_THROWS_AS(build_morse_complex(flow::make_scene("torus_circle_valued")), Error);
}

TEST_CASE("morse complex is stable under small perturbations") {
    for (const char* name : {"torus_product", "genus2_height"}) {
        CAPTURE(name);
        const auto r = stability_experiment(flow::make_scene(name), 0.02, 20, 7);
        CHECK(r.trials == 20);
        CHECK(r.all_identical());
    }
}

TEST_CASE("induced maps on the flat torus") {
    const auto s = flow::make_scene("torus_product");
    const auto id = induced_map(TorusMap::identity(), s, s);
    for (int k = 0; k <= 2; ++k) CHECK(on_h(id, k) == homalg::Matrix<rings::Rational>::identity(static_cast<std::size_t>(k == 1 ? 2 : 1)));

    const auto s2 = flow::make_scene("torus_product", {{"freq_x", 2}});
    TorusMap half;
    half.offset = flow::Vec2(0.5, 0);
    const auto h = induced_map(half, s2, s2);
    // permutes the two copies of each cell
    for (int k = 0; k <= 2; ++k) {
        const auto m = h.component(k);
        CAPTURE(k);
        CHECK(m.rows() == m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            int nonzero = 0;
            for (std::size_t i = 0; i < m.rows(); ++i)
                if (m(i, j) != 0) ++nonzero;
            CHECK(nonzero == 1);
            CHECK(m(j, j) == 0);
        }
    }
    CHECK(on_h(h, 2) == homalg::Matrix<rings::Rational>::identity(1));

    TorusMap dbl;
    dbl.linear << 2, 0, 0, 1;
    dbl.offset = flow::Vec2(0.13, 0.07);
    const auto d = induced_map(dbl, s, s);
    CHECK(on_h(d, 0)(0, 0) == 1);
    CHECK(on_h(d, 2)(0, 0) == 2);
    const auto d1 = on_h(d, 1);
    CHECK(d1(0, 0) * d1(1, 1) - d1(0, 1) * d1(1, 0) == 2);

    // composition agrees on homology
    TorusMap shear;
    shear.linear << 1, 1, 0, 1;
    shear.offset = flow::Vec2(0.21, 0.04);
    const auto g = induced_map(shear, s, s);
    const auto gd = induced_map(shear.after(dbl), s, s);
    for (int k = 0; k <= 2; ++k) CHECK(on_h(gd, k) == on_h(g, k) * on_h(d, k));
}
