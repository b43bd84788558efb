#include "morsekit/homalg/smith.hpp"

#include <utility>

namespace morsekit::homalg {

using rings::Integer;

namespace {

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] += c * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& c) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += c * m(src, j);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& c) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += c * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

// Floor-free quotient so that the remainder has smaller absolute value than the divisor.
Integer quotient(const Integer& a, const Integer& b) { return a / b; }

} // namespace

SmithForm smith_normal_form(const IntMatrix& input) {
    IntMatrix d = input;
    IntMatrix left = IntMatrix::identity(d.rows());
    IntMatrix right = IntMatrix::identity(d.cols());
    const std::size_t n = std::min(d.rows(), d.cols());

    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block
            bool found = false;
            std::size_t pi = t, pj = t;
            Integer best;
            for (std::size_t i = t; i < d.rows(); ++i)
                for (std::size_t j = t; j < d.cols(); ++j) {
                    if (d(i, j) == 0) continue;
                    const Integer a = abs_value(d(i, j));
                    if (!found || a < best) {
                        found = true;
                        best = a;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) goto done;
            swap_rows(d, t, pi);
            swap_rows(left, t, pi);
            swap_cols(d, t, pj);
            swap_cols(right, t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < d.rows(); ++i) {
                if (d(i, t) == 0) continue;
                const Integer q = quotient(d(i, t), d(t, t));
                add_row(d, i, t, -q);
                add_row(left, i, t, -q);
                if (d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < d.cols(); ++j) {
                if (d(t, j) == 0) continue;
                const Integer q = quotient(d(t, j), d(t, t));
                add_col(d, j, t, -q);
                add_col(right, j, t, -q);
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // divisibility: fold any non-multiple into the pivot row and retry
            bool divisible = true;
            for (std::size_t i = t + 1; i < d.rows() && divisible; ++i)
                for (std::size_t j = t + 1; j < d.cols(); ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        add_row(d, t, i, Integer(1));
                        add_row(left, t, i, Integer(1));
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (d(t, t) < 0) {
            negate_row(d, t);
            negate_row(left, t);
        }
    }
done:
    SmithForm out{d, left, right, {}};
    for (std::size_t t = 0; t < n; ++t)
        if (d(t, t) != 0) out.invariants.push_back(d(t, t));
    return out;
}

Integer determinant(const IntMatrix& input) {
    if (input.rows() != input.cols()) fail(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
    const std::size_t n = input.rows();
    if (n == 0) return 1;
    IntMatrix a = input;
    Integer sign = 1, prev = 1;
    // Bareiss fraction-free elimination
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a(r, k) == 0) ++r;
            if (r == n) return 0;
            swap_rows(a, k, r);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

} // namespace morsekit::homalg
