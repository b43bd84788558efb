#include "morsekit/homalg/homology.hpp"

#include <optional>
#include <utility>

namespace morsekit::homalg {

using rings::Integer;
using rings::NovikovSeries;
using rings::Rational;

namespace {

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// ---- rational helpers -------------------------------------------------------

using QMatrix = Matrix<Rational>;

struct QEchelon {
    QMatrix m;
    std::vector<std::size_t> pivots;
};

QEchelon rref(QMatrix m, std::size_t ncols) {
    QEchelon e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        const Rational inv = Rational(1) / m(row, col);
        for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            const Rational f = m(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        e.pivots.push_back(col);
        ++row;
    }
    e.m = std::move(m);
    return e;
}

QMatrix to_q(const IntMatrix& m) {
    return m.map([](const Integer& x) { return Rational(x); });
}

// Columns form a basis of ker m.
QMatrix kernel_basis(const QMatrix& m) {
    const auto e = rref(m, m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    QMatrix k(m.cols(), free_cols.size());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        k(free_cols[f], f) = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], f) = -e.m(r, free_cols[f]);
    }
    return k;
}

QMatrix hstack(const QMatrix& a, const QMatrix& b) {
    const std::size_t rows = std::max(a.rows(), b.rows());
    QMatrix c(rows, a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    return c;
}

QMatrix select_cols(const QMatrix& m, const std::vector<std::size_t>& cols) {
    QMatrix out(m.rows(), cols.size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(i, cols[j]);
    return out;
}

// Homology basis: kernel vectors that extend a basis of the boundaries.
struct HomologyBasis {
    QMatrix boundaries; // columns span im d_{k+1}
    QMatrix cycles;     // representatives of a basis of H_k
};

HomologyBasis homology_basis(const IntComplex& c, int k) {
    const QMatrix dk = to_q(c.boundary(k));
    const QMatrix dk1 = to_q(c.boundary(k + 1));
    QMatrix z = kernel_basis(dk);
    if (dk.rows() == 0) z = QMatrix::identity(c.rank(k));
    const auto bim = rref(dk1, dk1.cols());
    const QMatrix b = select_cols(dk1, bim.pivots);
    const auto ext = rref(hstack(b, z), b.cols() + z.cols());
    std::vector<std::size_t> chosen;
    for (auto col : ext.pivots)
        if (col >= b.cols()) chosen.push_back(col - b.cols());
    return {b, select_cols(z, chosen)};
}

// ---- Z((t)) Euclidean diagonalization ---------------------------------------

bool decided_zero(const NovikovSeries& x, int floor) {
    if (!x.is_zero()) return false;
    if (x.precision() < floor)
        fail(ErrorCode::PrecisionExhausted, "entry is zero only to O(t^" + std::to_string(x.precision()) + ")");
    return true;
}

// q with a = q b + r, r zero or |lead r| < |lead b|.
NovikovSeries euclid_quotient(const NovikovSeries& a, const NovikovSeries& b, int floor) {
    NovikovSeries q = NovikovSeries::zero();
    NovikovSeries r = a;
    const Integer bl = abs_value(b.leading());
    while (!decided_zero(r, floor) && abs_value(r.leading()) >= bl) {
        const Integer c = r.leading() / b.leading();
        const auto step = NovikovSeries::monomial(c, r.valuation() - b.valuation());
        q += step;
        r -= step * b;
    }
    return q;
}

std::vector<NovikovSeries> euclid_diagonal(LaurentMatrix m, int floor) {
    std::vector<NovikovSeries> diag;
    const std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t i = t; i < m.rows(); ++i)
                for (std::size_t j = t; j < m.cols(); ++j) {
                    if (decided_zero(m(i, j), floor)) continue;
                    if (!best || abs_value(m(i, j).leading()) < abs_value(m(best->first, best->second).leading())) best = {{i, j}};
                }
            if (!best) return diag;
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(t, j), m(best->first, j));
            for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, t), m(i, best->second));
            bool clean = true;
            const NovikovSeries p = m(t, t);
            for (std::size_t i = t + 1; i < m.rows(); ++i) {
                if (decided_zero(m(i, t), floor)) continue;
                const auto q = euclid_quotient(m(i, t), p, floor);
                for (std::size_t j = t; j < m.cols(); ++j) m(i, j) -= q * m(t, j);
                if (!decided_zero(m(i, t), floor)) clean = false;
            }
            for (std::size_t j = t + 1; j < m.cols(); ++j) {
                if (decided_zero(m(t, j), floor)) continue;
                const auto q = euclid_quotient(m(t, j), p, floor);
                for (std::size_t i = t; i < m.rows(); ++i) m(i, j) -= q * m(i, t);
                if (!decided_zero(m(t, j), floor)) clean = false;
            }
            if (clean) break;
        }
        diag.push_back(m(t, t));
    }
    return diag;
}

} // namespace

HomologyReport homology(const IntComplex& c) {
    c.check_square_zero();
    HomologyReport report;
    const int top = c.top_degree();
    std::vector<std::size_t> ranks(static_cast<std::size_t>(top + 2), 0);
    std::vector<std::vector<Integer>> inv(static_cast<std::size_t>(top + 2));
    for (int k = 1; k <= top; ++k) {
        const auto d = c.boundary(k);
        if (d.empty()) continue;
        auto snf = smith_normal_form(d);
        ranks[static_cast<std::size_t>(k)] = snf.invariants.size();
        inv[static_cast<std::size_t>(k)] = std::move(snf.invariants);
    }
    for (int k = 0; k <= top; ++k) {
        const auto n = static_cast<long long>(c.rank(k));
        const auto b = n - static_cast<long long>(ranks[static_cast<std::size_t>(k)]) - static_cast<long long>(ranks[static_cast<std::size_t>(k + 1)]);
        report.betti.push_back(static_cast<int>(b));
        std::vector<Integer> tors;
        for (const auto& d : inv[static_cast<std::size_t>(k + 1)])
            if (d > 1) tors.push_back(d);
        report.torsion.push_back(std::move(tors));
    }
    return report;
}

std::vector<int> novikov_homology_ranks(const NovikovComplex& c, const FieldOptions& opt) {
    const int top = c.top_degree();
    std::vector<std::size_t> r(static_cast<std::size_t>(top + 2), 0);
    for (int k = 1; k <= top; ++k) r[static_cast<std::size_t>(k)] = rank(to_rational(c.boundary(k)), opt);
    std::vector<int> out;
    for (int k = 0; k <= top; ++k)
        out.push_back(static_cast<int>(c.rank(k)) - static_cast<int>(r[static_cast<std::size_t>(k)] + r[static_cast<std::size_t>(k + 1)]));
    return out;
}

NovikovHomologyReport novikov_homology(const NovikovComplex& c, int zero_floor) {
    const int top = c.top_degree();
    std::vector<std::vector<NovikovSeries>> diags(static_cast<std::size_t>(top + 2));
    for (int k = 1; k <= top; ++k) {
        auto d = c.boundary(k);
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t j = 0; j < d.cols(); ++j)
                if (d(i, j).is_exact()) d(i, j) = d(i, j).truncated(rings::kDefaultOrder + 8);
        diags[static_cast<std::size_t>(k)] = euclid_diagonal(std::move(d), zero_floor);
    }
    NovikovHomologyReport report;
    for (int k = 0; k <= top; ++k) {
        const auto rk = diags[static_cast<std::size_t>(k)].size();
        const auto rk1 = diags[static_cast<std::size_t>(k + 1)].size();
        report.ranks.push_back(static_cast<int>(c.rank(k)) - static_cast<int>(rk + rk1));
        std::vector<NovikovSeries> tors;
        for (const auto& d : diags[static_cast<std::size_t>(k + 1)])
            if (!rings::ScalarTraits<Integer>::is_unit(d.leading())) tors.push_back(d.leading() < 0 ? -d : d);
        report.torsion.push_back(std::move(tors));
    }
    return report;
}

Matrix<Rational> induced_on_homology(const IntChainMap& f, int k) {
    const auto src = homology_basis(f.source(), k);
    const auto tgt = homology_basis(f.target(), k);
    const QMatrix image = to_q(f.component(k)) * src.cycles;
    // Solve [cycles | boundaries] x = image; the first block of x is the answer.
    const QMatrix basis = hstack(tgt.cycles, tgt.boundaries);
    QMatrix aug = hstack(basis, image);
    if (basis.rows() == 0) aug = QMatrix(0, basis.cols() + image.cols());
    const auto e = rref(aug, basis.cols());
    QMatrix out(tgt.cycles.cols(), image.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] >= tgt.cycles.cols()) continue;
        for (std::size_t j = 0; j < image.cols(); ++j) out(e.pivots[r], j) = e.m(r, basis.cols() + j);
    }
    for (std::size_t r = e.pivots.size(); r < e.m.rows(); ++r)
        for (std::size_t j = 0; j < image.cols(); ++j)
            if (e.m(r, basis.cols() + j) != 0) fail(ErrorCode::ChainMapViolation, "image of a cycle is not a cycle");
    return out;
}

} // namespace morsekit::homalg
