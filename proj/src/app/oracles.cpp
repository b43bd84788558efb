#include "morsekit/app/oracles.hpp"

#include "morsekit/homalg/torsion.hpp"

#include <algorithm>

namespace morsekit::app {

using homalg::IntMatrix;
using homalg::LaurentMatrix;
using homalg::NovikovComplex;
using rings::Integer;
using rings::NovikovSeries;
using rings::WittUnit;

namespace {

Integer gcd_int(Integer a, Integer b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Integer r = a % b;
        a = b;
        b = r;
    }
    return a;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (pick[i]) s.push_back(i);
        out.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

std::vector<std::string> labels(const std::string& p, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(p + std::to_string(i));
    return out;
}

NovikovSeries poly(int start, const std::vector<int>& c, int precision = rings::kExact) {
    return NovikovSeries::from_coeffs(start, std::vector<Integer>(c.begin(), c.end()), precision);
}

NovikovSeries random_unit(std::mt19937& rng) {
    std::uniform_int_distribution<int> shift(-1, 1);
    auto u = random_poly(rng, 4);
    std::vector<Integer> c(u.coeffs().begin(), u.coeffs().end());
    c.resize(4, 0);
    c[0] = (rng() & 1U) ? 1 : -1;
    return NovikovSeries::from_coeffs(shift(rng), std::move(c));
}

LaurentMatrix unipotent_inverse(const LaurentMatrix& m) {
    const auto n = m.rows();
    const LaurentMatrix nil = LaurentMatrix::identity(n) - m;
    LaurentMatrix out = LaurentMatrix::identity(n), power = LaurentMatrix::identity(n);
    for (std::size_t k = 1; k < n; ++k) {
        power = power * nil;
        out = out + power;
    }
    return out;
}

std::pair<LaurentMatrix, LaurentMatrix> random_unipotent(std::mt19937& rng, std::size_t n) {
    LaurentMatrix l = LaurentMatrix::identity(n), u = LaurentMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            l(i, j) = random_poly(rng, 2);
            u(j, i) = random_poly(rng, 2);
        }
    return {l * u, unipotent_inverse(u) * unipotent_inverse(l)};
}

NovikovSeries random_series(std::mt19937& rng, int order, bool unit) {
    std::uniform_int_distribution<int> coeff(-4, 4), val(-2, 2);
    std::vector<int> c(static_cast<std::size_t>(order));
    for (auto& x : c) x = coeff(rng);
    if (unit) c[0] = (rng() & 1U) ? 1 : -1;
    const int v = val(rng);
    return poly(v, c, v + order);
}

template <class Fn>
void run_case(PropertyCount& p, const std::string& label, Fn&& fn) {
    ++p.cases;
    bool ok = false;
    std::string why = label;
    try {
        ok = fn();
    } catch (const Error& e) {
        why += ": " + std::string(e.what());
    }
    if (!ok) {
        ++p.failures;
        if (p.first_failure.empty()) p.first_failure = why;
    }
}

PropertyCount ring_axioms(std::mt19937& rng) {
    PropertyCount p;
    p.name = "ring_axioms";
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_series(rng, 6, false), b = random_series(rng, 6, false), c = random_series(rng, 6, false);
        const auto u = random_series(rng, 7, true);
        run_case(p, "trial " + std::to_string(trial), [&] {
            const auto l = (a * b) * c, r = a * (b * c);
            const auto d1 = a * (b + c), d2 = a * b + a * c;
            const auto inv = u * rings::invert(u);
            return agree_to(l, r, std::min(l.precision(), r.precision())) && agree_to(d1, d2, std::min(d1.precision(), d2.precision())) &&
                   agree_to(a + b, b + a, std::min(a.precision(), b.precision())) && agree_to(inv, NovikovSeries::one(), inv.precision()) &&
                   agree_to(a - a, NovikovSeries::zero(), a.precision());
        });
    }
    return p;
}

PropertyCount exp_log(std::mt19937& rng) {
    PropertyCount p;
    p.name = "exp_log";
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int trial = 0; trial < 100; ++trial) {
        rings::TruncatedSeries<Integer> u(9);
        u[0] = 1;
        for (int k = 1; k < 9; ++k) u[k] = coeff(rng);
        run_case(p, "trial " + std::to_string(trial), [&] {
            const WittUnit w(u);
            return rings::series_exp(rings::series_log(w)) == w && rings::series_log(w * w) == rings::series_log(w) + rings::series_log(w);
        });
    }
    return p;
}

PropertyCount snf_minors(std::mt19937& rng) {
    PropertyCount p;
    p.name = "snf_vs_minor_gcd";
    std::uniform_int_distribution<int> dim(1, 6), entry(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        const auto r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = (rng() % 3 == 0) ? 0 : entry(rng);
        run_case(p, "matrix " + std::to_string(trial), [&] {
            const auto s = homalg::smith_normal_form(m);
            const auto dl = homalg::determinant(s.left), dr = homalg::determinant(s.right);
            return s.invariants == invariants_by_minors(m) && s.left * m * s.right == s.diagonal && (dl == 1 || dl == -1) && (dr == 1 || dr == -1);
        });
    }
    return p;
}

PropertyCount torsion_multiplicativity(std::mt19937& rng) {
    PropertyCount p;
    p.name = "torsion_multiplicativity";
    const int order = 8;
    for (int trial = 0; trial < 15; ++trial) {
        const auto c = random_acyclic(rng, order);
        const auto d = random_acyclic(rng, order);
        const int top = std::max(c.complex.top_degree(), d.complex.top_degree());
        std::vector<LaurentMatrix> h;
        for (int k = 0; k <= top; ++k) {
            LaurentMatrix m(d.complex.rank(k + 1), c.complex.rank(k));
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = random_poly(rng, 2);
            h.push_back(m);
        }
        run_case(p, "trial " + std::to_string(trial), [&] {
            const auto expected = d.expected * c.expected.inverse();
            if (homalg::torsion(c.complex, order) != c.expected) return false;
            if (homalg::torsion(homalg::mapping_cone(homalg::NovikovChainMap::zero(c.complex, d.complex)), order) != expected) return false;
            // dH + Hd is null-homotopic
            std::vector<LaurentMatrix> f;
            for (int k = 0; k <= top; ++k) {
                LaurentMatrix m = d.complex.boundary(k + 1) * h[static_cast<std::size_t>(k)];
                if (k >= 1) m = m + h[static_cast<std::size_t>(k - 1)] * c.complex.boundary(k);
                f.push_back(m);
            }
            const homalg::NovikovChainMap fmap(c.complex, d.complex, f);
            return fmap.is_chain_map() && homalg::torsion(homalg::mapping_cone(fmap), order) == expected;
        });
    }
    return p;
}

} // namespace

std::vector<Integer> invariants_by_minors(const IntMatrix& m) {
    std::vector<Integer> out;
    Integer prev = 1;
    for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
        Integer g = 0;
        for (const auto& r : subsets(m.rows(), k))
            for (const auto& c : subsets(m.cols(), k)) {
                IntMatrix sub(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(r[i], c[j]);
                g = gcd_int(g, homalg::determinant(sub));
            }
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

NovikovSeries random_poly(std::mt19937& rng, int len) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::vector<int> c(static_cast<std::size_t>(len));
    for (auto& x : c) x = coeff(rng);
    return poly(0, c);
}

AcyclicSample random_acyclic(std::mt19937& rng, int order) {
    std::uniform_int_distribution<int> count(0, 2);
    const int a = count(rng) + 1, b = count(rng);
    const auto n0 = static_cast<std::size_t>(a), n1 = static_cast<std::size_t>(a + b), n2 = static_cast<std::size_t>(b);
    LaurentMatrix d1(n0, n1), d2(n1, n2);
    WittUnit expected(order);
    for (int i = 0; i < a; ++i) {
        const auto u = random_unit(rng);
        d1(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = u;
        expected = expected * rings::normalize_torsion(u, order);
    }
    for (int i = 0; i < b; ++i) {
        const auto u = random_unit(rng);
        d2(static_cast<std::size_t>(a + i), static_cast<std::size_t>(i)) = u;
        expected = expected * rings::normalize_torsion(u, order).inverse();
    }
    const auto p0 = random_unipotent(rng, n0), p1 = random_unipotent(rng, n1), p2 = random_unipotent(rng, n2);
    d1 = p0.first * d1 * p1.second;
    d2 = p1.first * d2 * p2.second;
    std::vector<std::vector<std::string>> bases{labels("a", n0), labels("b", n1)};
    std::vector<LaurentMatrix> ds{d1};
    if (n2 > 0) {
        bases.push_back(labels("c", n2));
        ds.push_back(d2);
    }
    return {NovikovComplex(bases, ds), expected};
}

std::vector<PropertyCount> algebra_properties(std::uint64_t seed) {
    std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
    std::vector<PropertyCount> out;
    out.push_back(ring_axioms(rng));
    out.push_back(exp_log(rng));
    out.push_back(snf_minors(rng));
    out.push_back(torsion_multiplicativity(rng));
    return out;
}

nlohmann::json to_json(const PropertyCount& p) {
    nlohmann::json j = {{"name", p.name}, {"cases", p.cases}, {"failures", p.failures}, {"pass", p.pass()}};
    if (!p.first_failure.empty()) j["first_failure"] = p.first_failure;
    return j;
}

} // namespace morsekit::app
