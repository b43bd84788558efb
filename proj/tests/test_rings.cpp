#include <doctest.h>

#include "morsekit/rings/laurent_series.hpp"
#include "morsekit/rings/witt.hpp"

#include <random>

using namespace morsekit;
using namespace morsekit::rings;

namespace {

NovikovSeries poly(int start, std::vector<int> c, int precision = kExact) {
    std::vector<Integer> v(c.begin(), c.end());
    return NovikovSeries::from_coeffs(start, std::move(v), precision);
}

// 1 + t + t^2 + ... known to order n
NovikovSeries geometric(int n) { return poly(0, std::vector<int>(static_cast<std::size_t>(n), 1), n); }

NovikovSeries random_series(std::mt19937& rng, int order, bool unit) {
    std::uniform_int_distribution<int> coeff(-4, 4), val(-2, 2);
    std::vector<int> c(static_cast<std::size_t>(order));
    for (auto& x : c) x = coeff(rng);
    if (unit) c[0] = (rng() & 1U) ? 1 : -1;
    const int v = val(rng);
    return poly(v, c, v + order);
}

// Coefficients of (1 - 3t + t^2) / (1 - t)^2, expanded by hand:
// (1 - t)^-2 = sum (n+1) t^n, then convolve with 1 - 3t + t^2.
std::vector<Integer> cat_map_zeta(int n) {
    std::vector<Integer> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        Integer c = k + 1;
        if (k >= 1) c -= 3 * k;
        if (k >= 2) c += k - 1;
        out[static_cast<std::size_t>(k)] = c;
    }
    return out;
}

} // namespace

TEST_CASE("addition identity and cancellation") {
    const auto s = poly(-1, {3, 0, 2}, 5);
    CHECK(NovikovSeries::zero() + s == s);
    const auto a = poly(-1, {1, 1});
    const auto b = poly(-1, {-1});
    const auto sum = a + b;
    CHECK(sum == NovikovSeries::one());
    CHECK(sum.valuation() == 0);
    CHECK(poly(0, {1, 1}) + poly(0, {1, 1}) == poly(0, {2, 2}));
}

TEST_CASE("addition keeps the overlap of known windows") {
    const auto a = poly(0, {1, 2, 3}, 3);
    const auto b = poly(0, {1}, 5);
    CHECK((a + b).precision() == 3);
    const auto c = poly(0, {1, 0, 0}, 3) - poly(0, {1}, 10);
    CHECK(c.is_zero());
    CHECK(c.precision() == 3);
}

TEST_CASE("multiplication") {
    const auto s = poly(2, {1, -5, 7}, 9);
    CHECK(NovikovSeries::one() * s == s);
    CHECK(poly(1, {1}) * poly(-1, {1}) == NovikovSeries::one());
    const int n = 10;
    const auto prod = poly(0, {1, -1}) * geometric(n);
    CHECK(prod == NovikovSeries::one().truncated(n));
}

TEST_CASE("inversion") {
    const auto inv = invert(poly(0, {1, -1}), 8);
    CHECK(inv == geometric(8));
    CHECK(invert(poly(1, {1})) == poly(-1, {1}, kExact).truncated(-1 + kDefaultOrder));
    CHECK_THROWS_AS(invert(poly(0, {2})), Error);
    try {
        (void)invert(poly(0, {2}));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotAUnit);
    }
    CHECK_THROWS_AS(invert(NovikovSeries::zero(4)), Error);
}

TEST_CASE("ring axioms on random series") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_series(rng, 6, false);
        const auto b = random_series(rng, 6, false);
        const auto c = random_series(rng, 6, false);
        const auto lhs = (a * b) * c;
        const auto rhs = a * (b * c);
        const int n = std::min(lhs.precision(), rhs.precision());
        CHECK(agree_to(lhs, rhs, n));
        const auto d1 = a * (b + c);
        const auto d2 = a * b + a * c;
        const int m = std::min(d1.precision(), d2.precision());
        CHECK(agree_to(d1, d2, m));
        CHECK(agree_to(a + b, b + a, std::min(a.precision(), b.precision())));
    }
}

TEST_CASE("inverse is two-sided") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto u = random_series(rng, 7, true);
        const auto v = invert(u);
        const auto left = u * v;
        const auto right = v * u;
        CHECK(agree_to(left, NovikovSeries::one(), left.precision()));
        CHECK(agree_to(right, NovikovSeries::one(), right.precision()));
        CHECK(left.precision() == 7);
    }
}

TEST_CASE("exp and log") {
    const int n = 10;
    CHECK(series_exp(TruncatedSeries<Rational>(n)).is_one());

    // log(1+t) = t - t^2/2 + t^3/3 - ...
    TruncatedSeries<Integer> one_plus_t(n);
    one_plus_t[0] = 1;
    one_plus_t[1] = 1;
    const auto l = series_log(WittUnit(one_plus_t));
    for (int k = 1; k < n; ++k) CHECK(l[k] == Rational(k % 2 == 1 ? 1 : -1, k));
    CHECK(series_exp(l).series() == one_plus_t);

    CHECK(series_log(WittUnit(n)).is_zero());

    TruncatedSeries<Rational> t2(n);
    t2[2] = 1;
    CHECK(series_log(exp_rational(t2)) == t2);
    CHECK_THROWS_AS(series_exp(t2), Error); // 1 + t^2 + t^4/2 + ...

    TruncatedSeries<Rational> bad(n);
    bad[0] = 1;
    CHECK_THROWS_AS(series_exp(bad), Error);
    TruncatedSeries<Rational> half(n);
    half[1] = Rational(1, 2);
    try {
        (void)series_exp(half);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonIntegral);
    }
}

TEST_CASE("exp of cat-map trace series matches closed form") {
    // Traces of [[2,1],[1,1]]^n via tr A^{n+1} = 3 tr A^n - tr A^{n-1}, tr A^0 = 2.
    const int n = 12;
    std::vector<long long> tr{2, 3};
    while (static_cast<int>(tr.size()) <= n) tr.push_back(3 * tr[tr.size() - 1] - tr[tr.size() - 2]);
    TruncatedSeries<Rational> a(n);
    for (int k = 1; k < n; ++k) a[k] = Rational(2 - tr[static_cast<std::size_t>(k)], k);
    CHECK(a[1] == -1);
    CHECK(a[2] == Rational(-5, 2));
    CHECK(a[3] == Rational(-16, 3));
    const auto z = series_exp(a);
    const auto expected = cat_map_zeta(n);
    for (int k = 0; k < n; ++k) CHECK(z[k] == expected[static_cast<std::size_t>(k)]);
}

TEST_CASE("exp and log are mutually inverse on random inputs") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        TruncatedSeries<Integer> u(9);
        u[0] = 1;
        for (int k = 1; k < 9; ++k) u[k] = coeff(rng);
        const WittUnit w(u);
        CHECK(series_exp(series_log(w)) == w);
        TruncatedSeries<Rational> x(9);
        for (int k = 1; k < 9; ++k) x[k] = Rational(coeff(rng), 1 + (rng() % 4));
        CHECK(series_log(WittUnit(9)) == TruncatedSeries<Rational>(9));
        const auto ex = exp_rational(x);
        // log(exp x) == x over Q, via l = integral of (exp x)' / exp x
        TruncatedSeries<Rational> deriv(9);
        for (int k = 1; k < 9; ++k) deriv[k - 1] = Rational(k) * ex[k];
        const auto q = deriv * ex.inverse();
        for (int k = 1; k < 9; ++k) CHECK(q[k - 1] / k == x[k]);
    }
}

TEST_CASE("normalize_torsion") {
    const int n = 6;
    TruncatedSeries<Integer> expect(n);
    expect[0] = 1;
    expect[1] = -1;
    CHECK(normalize_torsion(poly(3, {-1, 1}), n).series() == expect);
    CHECK(normalize_torsion(NovikovSeries::one(), n).is_one());
    CHECK(normalize_torsion(poly(-2, {1}), n).is_one());
    CHECK_THROWS_AS(normalize_torsion(poly(0, {2, 1}), n), Error);
}

TEST_CASE("normalize_torsion is multiplicative") {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        const auto u = random_series(rng, 8, true);
        const auto v = random_series(rng, 8, true);
        CHECK(normalize_torsion(u * v, 8) == normalize_torsion(u, 8) * normalize_torsion(v, 8));
    }
}
