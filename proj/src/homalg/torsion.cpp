#include "morsekit/homalg/torsion.hpp"

#include <random>

namespace morsekit::homalg {

using rings::Rational;
using rings::RationalLaurent;

namespace {

using QL = RationalLaurentMatrix;

QL random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::uniform_int_distribution<int> coeff(-2, 2), power(0, 2);
    QL m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = RationalLaurent::monomial(Rational(coeff(rng)), power(rng));
    return m;
}

bool all_zero(const QL& m, const FieldOptions& opt) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const auto& x = m(i, j);
            if (!x.is_zero()) return false;
            if (x.precision() < opt.zero_floor) fail(ErrorCode::PrecisionExhausted, "contraction residual is undecided");
        }
    return true;
}

} // namespace

rings::WittUnit torsion(const NovikovComplex& c, int order, std::optional<std::uint64_t> seed) {
    c.check_square_zero(order);
    const int top = c.top_degree();
    std::size_t even = 0, odd = 0;
    for (int k = 0; k <= top; ++k) (k % 2 == 0 ? even : odd) += c.rank(k);
    if (even != odd) fail(ErrorCode::NotAcyclic, "Euler characteristic is nonzero");

    FieldOptions opt;
    opt.work_order = order + 8;
    std::vector<QL> d(static_cast<std::size_t>(top + 2));
    for (int k = 0; k <= top + 1; ++k) d[static_cast<std::size_t>(k)] = to_rational(c.boundary(k));
    std::optional<std::mt19937_64> rng;
    if (seed) rng.emplace(*seed);

    // gamma[k]: C_k -> C_{k+1} with d gamma + gamma d = 1
    std::vector<QL> gamma(static_cast<std::size_t>(top + 1));
    for (int k = 0; k <= top; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        QL rhs = QL::identity(c.rank(k));
        if (k >= 1) rhs = rhs - gamma[ku - 1] * d[ku];
        if (k == top) {
            if (!all_zero(rhs, opt)) fail(ErrorCode::NotAcyclic, "top boundary is not injective");
            gamma[ku] = QL(0, c.rank(k));
            break;
        }
        gamma[ku] = solve(d[ku + 1], rhs, opt);
        if (rng && k + 2 <= top) gamma[ku] = gamma[ku] + d[ku + 2] * random_matrix(*rng, c.rank(k + 2), c.rank(k));
    }

    // (d + gamma) restricted to odd degrees, landing in even degrees
    std::vector<std::size_t> off(static_cast<std::size_t>(top + 2), 0);
    std::size_t ei = 0, oi = 0;
    for (int k = 0; k <= top; ++k) {
        off[static_cast<std::size_t>(k)] = k % 2 == 0 ? ei : oi;
        (k % 2 == 0 ? ei : oi) += c.rank(k);
    }
    QL m(even, odd);
    for (int k = 1; k <= top; k += 2) {
        const auto ku = static_cast<std::size_t>(k);
        const auto& dk = d[ku];
        for (std::size_t i = 0; i < dk.rows(); ++i)
            for (std::size_t j = 0; j < dk.cols(); ++j) m(off[ku - 1] + i, off[ku] + j) = dk(i, j);
        const auto& g = gamma[ku];
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j) m(off[ku + 1] + i, off[ku] + j) = g(i, j);
    }
    const RationalLaurent det = determinant(m, opt);
    if (det.is_zero()) fail(ErrorCode::NotAcyclic, "contraction determinant vanishes");
    const auto integral = rings::to_integral(det);
    if (!integral) fail(ErrorCode::NonIntegral, "torsion has non-integral coefficients");
    const auto& u = *integral;
    if (u.leading() != 1 && u.leading() != -1) fail(ErrorCode::NotAUnit, "torsion is not a unit of Z((t))");
    return rings::normalize_torsion(u, order);
}

} // namespace morsekit::homalg
