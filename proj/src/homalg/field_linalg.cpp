#include "morsekit/homalg/field_linalg.hpp"

#include <optional>
#include <utility>

namespace morsekit::homalg {

using rings::RationalLaurent;

namespace {

bool decided_zero(const RationalLaurent& x, const FieldOptions& opt) {
    if (!x.is_zero()) return false;
    if (x.precision() < opt.zero_floor)
        fail(ErrorCode::PrecisionExhausted, "entry is zero only to O(t^" + std::to_string(x.precision()) + "), below the decision floor t^" +
                                                std::to_string(opt.zero_floor));
    return true;
}

// Row with the lowest-valuation nonzero entry in column `col`, at or below `from`.
std::optional<std::size_t> find_pivot(const RationalLaurentMatrix& m, std::size_t col, std::size_t from, const FieldOptions& opt) {
    std::optional<std::size_t> best;
    for (std::size_t i = from; i < m.rows(); ++i) {
        if (decided_zero(m(i, col), opt)) continue;
        if (!best || m(i, col).valuation() < m(*best, col).valuation()) best = i;
    }
    return best;
}

void swap_rows(RationalLaurentMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

struct Echelon {
    RationalLaurentMatrix m;
    std::vector<std::size_t> pivot_cols; // pivot_cols[r] = column of the pivot in row r
    RationalLaurent det = RationalLaurent::one();
};

// Gauss-Jordan on the first `ncols` columns; other columns ride along.
Echelon reduce(RationalLaurentMatrix m, std::size_t ncols, bool full, const FieldOptions& opt) {
    Echelon e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.rows(); ++col) {
        const auto p = find_pivot(m, col, row, opt);
        if (!p) continue;
        if (*p != row) {
            swap_rows(m, *p, row);
            e.det = -e.det;
        }
        const RationalLaurent pivot = m(row, col);
        e.det *= pivot;
        const RationalLaurent inv = pivot.inverse(opt.work_order);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
        m(row, col) = RationalLaurent::one();
        for (std::size_t i = full ? 0 : row + 1; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            const RationalLaurent factor = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
            m(i, col) = RationalLaurent::zero();
        }
        e.pivot_cols.push_back(col);
        ++row;
    }
    e.m = std::move(m);
    return e;
}

} // namespace

RationalLaurentMatrix to_rational(const LaurentMatrix& m) {
    return m.map([](const rings::NovikovSeries& x) { return rings::convert<rings::Rational>(x); });
}

std::size_t rank(const RationalLaurentMatrix& m, const FieldOptions& opt) {
    return reduce(m, m.cols(), false, opt).pivot_cols.size();
}

RationalLaurent determinant(const RationalLaurentMatrix& m, const FieldOptions& opt) {
    if (m.rows() != m.cols()) fail(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
    auto e = reduce(m, m.cols(), false, opt);
    if (e.pivot_cols.size() < m.rows()) return RationalLaurent::zero();
    return e.det;
}

RationalLaurentMatrix solve(const RationalLaurentMatrix& a, const RationalLaurentMatrix& b, const FieldOptions& opt) {
    if (a.rows() != b.rows()) fail(ErrorCode::InvalidArgument, "solve: row mismatch");
    RationalLaurentMatrix aug(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) aug(i, a.cols() + j) = b(i, j);
    }
    auto e = reduce(std::move(aug), a.cols(), true, opt);
    const std::size_t r = e.pivot_cols.size();
    for (std::size_t i = r; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (!decided_zero(e.m(i, a.cols() + j), opt)) fail(ErrorCode::NotAcyclic, "linear system has no solution");
    RationalLaurentMatrix x(a.cols(), b.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivot_cols[i], j) = e.m(i, a.cols() + j);
    return x;
}

} // namespace morsekit::homalg
