#include <doctest.h>

#include "morsekit/app/oracles.hpp"
#include "morsekit/homalg/homology.hpp"
#include "morsekit/homalg/torsion.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace morsekit;
using namespace morsekit::homalg;
using app::invariants_by_minors;
using app::random_acyclic;
using app::random_poly;
using rings::Integer;
using rings::NovikovSeries;
using rings::WittUnit;

namespace {

IntMatrix imat(std::size_t r, std::size_t c, std::vector<int> v) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = v[i * c + j];
    return m;
}

NovikovSeries poly(int start, std::vector<int> c) {
    std::vector<Integer> v(c.begin(), c.end());
    return NovikovSeries::from_coeffs(start, std::move(v));
}

LaurentMatrix nmat(std::size_t r, std::size_t c, std::vector<NovikovSeries> v) {
    LaurentMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = v[i * c + j];
    return m;
}

std::vector<std::string> labels(const std::string& p, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(p + std::to_string(i));
    return out;
}

// (-1)^k-signed permutation base change in every degree
template <class T>
BasedComplex<T> shuffled(const BasedComplex<T>& c, std::mt19937& rng) {
    std::vector<Matrix<T>> p, pinv;
    for (int k = 0; k <= c.top_degree(); ++k) {
        const auto n = c.rank(k);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Matrix<T> m(n, n), mi(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const int s = (rng() & 1U) ? 1 : -1;
            m(perm[i], i) = T(s);
            mi(i, perm[i]) = T(s);
        }
        p.push_back(m);
        pinv.push_back(mi);
    }
    std::vector<Matrix<T>> d;
    for (int k = 1; k <= c.top_degree(); ++k)
        d.push_back(p[static_cast<std::size_t>(k - 1)] * c.boundary(k) * pinv[static_cast<std::size_t>(k)]);
    return BasedComplex<T>(c.bases(), std::move(d));
}

std::vector<Integer> witt_coeffs(const WittUnit& w) { return w.series().coeffs(); }

} // namespace

TEST_CASE("smith normal form basics") {
    SUBCASE("identity") {
        const auto s = smith_normal_form(IntMatrix::identity(3));
        CHECK(s.invariants == std::vector<Integer>{1, 1, 1});
    }
    SUBCASE("zero") {
        const auto s = smith_normal_form(IntMatrix(2, 3));
        CHECK(s.invariants.empty());
    }
    SUBCASE("diag(2,3)") {
        const auto m = imat(2, 2, {2, 0, 0, 3});
        const auto s = smith_normal_form(m);
        CHECK(s.invariants == std::vector<Integer>{1, 6});
        CHECK(s.left * m * s.right == s.diagonal);
    }
}

TEST_CASE("smith invariants agree with gcds of minors") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dim(1, 6), entry(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        const auto r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = (rng() % 3 == 0) ? 0 : entry(rng);
        const auto s = smith_normal_form(m);
        CHECK(s.invariants == invariants_by_minors(m));
        CHECK(s.left * m * s.right == s.diagonal);
        CHECK((determinant(s.left) == 1 || determinant(s.left) == -1));
        CHECK((determinant(s.right) == 1 || determinant(s.right) == -1));
    }
}

TEST_CASE("integral homology") {
    SUBCASE("two-cell-per-degree sphere") {
        IntComplex s2({{"v0", "v1"}, {"e0", "e1"}, {"f0", "f1"}},
                      {imat(2, 2, {-1, -1, 1, 1}), imat(2, 2, {1, 1, -1, -1})});
        const auto h = homology(s2);
        CHECK(h.betti == std::vector<int>{1, 0, 1});
        CHECK(h.torsion == std::vector<std::vector<Integer>>{{}, {}, {}});
    }
    SUBCASE("multiplication by two") {
        IntComplex c({{"a"}, {"b"}}, {imat(1, 1, {2})});
        const auto h = homology(c);
        CHECK(h.betti == std::vector<int>{0, 0});
        CHECK(h.torsion == std::vector<std::vector<Integer>>{{2}, {}});
    }
    SUBCASE("projective plane") {
        IntComplex rp2({{"v"}, {"e"}, {"f"}}, {imat(1, 1, {0}), imat(1, 1, {2})});
        const auto h = homology(rp2);
        CHECK(h.betti == std::vector<int>{1, 0, 0});
        CHECK(h.torsion[1] == std::vector<Integer>{2});
    }
    SUBCASE("nonzero square") {
        IntComplex bad({{"v"}, {"e"}, {"f"}}, {imat(1, 1, {1}), imat(1, 1, {1})});
        CHECK_THROWS_AS(homology(bad), Error);
    }
}

TEST_CASE("homology is invariant under signed permutations of bases") {
    std::mt19937 rng(11);
    IntComplex torus({{"v"}, {"a", "b"}, {"f"}}, {IntMatrix(1, 2), IntMatrix(2, 1)});
    IntComplex s2({{"v0", "v1"}, {"e0", "e1"}, {"f0", "f1"}}, {imat(2, 2, {-1, -1, 1, 1}), imat(2, 2, {1, 1, -1, -1})});
    IntComplex rp2({{"v0", "v1"}, {"e0", "e1", "e2"}, {"f0"}}, {imat(2, 3, {-1, 1, 0, 1, -1, 0}), imat(3, 1, {1, 1, 2})});
    for (const auto* c : {&torus, &s2, &rp2}) {
        const auto ref = homology(*c);
        for (int i = 0; i < 10; ++i) CHECK(homology(shuffled(*c, rng)) == ref);
    }
}

TEST_CASE("induced maps on rational homology") {
    IntComplex circle({{"v"}, {"e"}}, {IntMatrix(1, 1)});
    const IntChainMap deg3(circle, circle, {imat(1, 1, {1}), imat(1, 1, {3})});
    CHECK(induced_on_homology(deg3, 1)(0, 0) == 3);
    CHECK(induced_on_homology(deg3, 0)(0, 0) == 1);
    IntComplex torus({{"v"}, {"a", "b"}, {"f"}}, {IntMatrix(1, 2), IntMatrix(2, 1)});
    const IntChainMap cat(torus, torus, {imat(1, 1, {1}), imat(2, 2, {2, 1, 1, 1}), imat(1, 1, {1})});
    const auto h1 = induced_on_homology(cat, 1);
    CHECK(h1(0, 0) == 2);
    CHECK(h1(0, 1) == 1);
    CHECK(h1(1, 0) == 1);
    CHECK(h1(1, 1) == 1);
}

TEST_CASE("novikov homology") {
    SUBCASE("1 - t is a unit") {
        NovikovComplex c({{"a"}, {"b"}}, {nmat(1, 1, {poly(0, {1, -1})})});
        CHECK(novikov_homology_ranks(c) == std::vector<int>{0, 0});
        const auto h = novikov_homology(c);
        CHECK(h.ranks == std::vector<int>{0, 0});
        CHECK(h.torsion[0].empty());
    }
    SUBCASE("zero differential") {
        NovikovComplex c({{"a"}, {"b"}}, {nmat(1, 1, {NovikovSeries::zero()})});
        CHECK(novikov_homology_ranks(c) == std::vector<int>{1, 1});
    }
    SUBCASE("2 - t is not a unit") {
        NovikovComplex c({{"a"}, {"b"}}, {nmat(1, 1, {poly(0, {2, -1})})});
        const auto h = novikov_homology(c);
        CHECK(h.ranks == std::vector<int>{0, 0});
        REQUIRE(h.torsion[0].size() == 1);
    }
    SUBCASE("rank one boundary") {
        const auto u = poly(-1, {1, 2});
        NovikovComplex c({{"a", "b"}, {"c", "d"}}, {nmat(2, 2, {u, u * poly(0, {0, 1}), NovikovSeries::zero(), NovikovSeries::zero()})});
        CHECK(novikov_homology_ranks(c) == std::vector<int>{1, 1});
        CHECK(novikov_homology(c).ranks == std::vector<int>{1, 1});
    }
    SUBCASE("undecidable zero") {
        NovikovComplex c({{"a"}, {"b"}}, {nmat(1, 1, {NovikovSeries::zero(-2)})});
        CHECK_THROWS_AS(novikov_homology_ranks(c), Error);
    }
}

TEST_CASE("torsion of elementary complexes") {
    SUBCASE("d = 1") {
        NovikovComplex c({{"a"}, {"b"}}, {nmat(1, 1, {NovikovSeries::one()})});
        CHECK(torsion(c).is_one());
    }
    SUBCASE("d = 1 - 3t + t^2") {
        NovikovComplex c({{"a"}, {"b"}}, {nmat(1, 1, {poly(0, {1, -3, 1})})});
        const auto w = torsion(c, 8);
        CHECK(witt_coeffs(w) == std::vector<Integer>{1, -3, 1, 0, 0, 0, 0, 0});
    }
    SUBCASE("sign and shift are stripped") {
        NovikovComplex c({{"a"}, {"b"}}, {nmat(1, 1, {poly(3, {-1, 2})})});
        CHECK(witt_coeffs(torsion(c, 4)) == std::vector<Integer>{1, -2, 0, 0});
    }
    SUBCASE("degree shift inverts") {
        NovikovComplex c({{}, {"a"}, {"b"}}, {LaurentMatrix(0, 1), nmat(1, 1, {poly(0, {1, -1})})});
        CHECK(witt_coeffs(torsion(c, 5)) == std::vector<Integer>{1, 1, 1, 1, 1});
    }
    SUBCASE("not acyclic") {
        NovikovComplex c({{"a"}, {"b"}}, {nmat(1, 1, {NovikovSeries::zero()})});
        CHECK_THROWS_AS(torsion(c), Error);
        NovikovComplex odd({{"a"}}, {});
        CHECK_THROWS_AS(torsion(odd), Error);
    }
    SUBCASE("not a unit") {
        NovikovComplex c({{"a"}, {"b"}}, {nmat(1, 1, {poly(0, {2, 1})})});
        CHECK_THROWS_AS(torsion(c), Error);
    }
}

TEST_CASE("torsion of random acyclic complexes") {
    std::mt19937 rng(3);
    const int order = 10;
    for (int trial = 0; trial < 25; ++trial) {
        const auto s = random_acyclic(rng, order);
        CHECK(torsion(s.complex, order) == s.expected);
        for (std::uint64_t seed = 1; seed <= 3; ++seed) CHECK(torsion(s.complex, order, seed) == s.expected);
    }
}

TEST_CASE("torsion is multiplicative over mapping cones") {
    std::mt19937 rng(5);
    const int order = 8;
    for (int trial = 0; trial < 15; ++trial) {
        const auto c = random_acyclic(rng, order);
        const auto d = random_acyclic(rng, order);
        const auto expected = d.expected * c.expected.inverse();
        const auto zero = NovikovChainMap::zero(c.complex, d.complex);
        CHECK(torsion(mapping_cone(zero), order) == expected);

        // f = dH + Hd is null-homotopic
        const int top = std::max(c.complex.top_degree(), d.complex.top_degree());
        std::vector<LaurentMatrix> h;
        for (int k = 0; k <= top; ++k) {
            LaurentMatrix m(d.complex.rank(k + 1), c.complex.rank(k));
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = random_poly(rng, 2);
            h.push_back(m);
        }
        std::vector<LaurentMatrix> f;
        for (int k = 0; k <= top; ++k) {
            LaurentMatrix m = d.complex.boundary(k + 1) * h[static_cast<std::size_t>(k)];
            if (k >= 1) m = m + h[static_cast<std::size_t>(k - 1)] * c.complex.boundary(k);
            f.push_back(m);
        }
        const NovikovChainMap fmap(c.complex, d.complex, f);
        REQUIRE(fmap.is_chain_map());
        CHECK(torsion(mapping_cone(fmap), order) == expected);
    }
}

TEST_CASE("cone of the identity is acyclic with trivial torsion") {
    NovikovComplex c({{"a", "b"}, {"c", "d"}, {"e"}},
                     {nmat(2, 2, {poly(0, {1, -1}), NovikovSeries::zero(), NovikovSeries::zero(), NovikovSeries::zero()}),
                      nmat(2, 1, {NovikovSeries::zero(), NovikovSeries::zero()})});
    const auto cone = mapping_cone(NovikovChainMap::identity(c));
    for (int r : novikov_homology_ranks(cone)) CHECK(r == 0);
    CHECK(torsion(cone).is_one());
}
