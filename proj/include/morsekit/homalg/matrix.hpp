#pragma once

#include "morsekit/error.hpp"
#include "morsekit/rings/laurent_series.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace morsekit::homalg {

inline bool is_zero_entry(const rings::Integer& x) { return x == 0; }
inline bool is_zero_entry(const rings::Rational& x) { return x == 0; }
template <class R>
bool is_zero_entry(const rings::LaurentSeries<R>& x) { return x.is_zero(); }

/// Dense row-major matrix over a commutative ring.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) fail(ErrorCode::InvalidArgument, "matrix product shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (is_zero_entry(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix c(a);
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix c(a);
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
        return c;
    }

    Matrix operator-() const {
        Matrix c(*this);
        for (auto& x : c.data_) x = -x;
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Applies `fn` to every entry, producing a matrix over another ring.
    template <class Fn>
    auto map(Fn&& fn) const -> Matrix<decltype(fn(std::declval<const T&>()))> {
        Matrix<decltype(fn(std::declval<const T&>()))> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = fn((*this)(i, j));
        return out;
    }

private:
    static void check_same_shape(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorCode::InvalidArgument, "matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Vanishing certified to `order`: exact zero for scalars; for series, zero
/// on every exponent below `order`.
inline bool vanishes_to(const rings::Integer& x, int) { return x == 0; }
template <class R>
bool vanishes_to(const rings::LaurentSeries<R>& x, int order) { return x.is_zero() && x.precision() >= order; }

/// Entrywise equality certified to `order` (exact for scalars).
inline bool equal_to_order(const rings::Integer& a, const rings::Integer& b, int) { return a == b; }
template <class R>
bool equal_to_order(const rings::LaurentSeries<R>& a, const rings::LaurentSeries<R>& b, int order) {
    return vanishes_to(a - b, order);
}

template <class T>
bool equal_to_order(const Matrix<T>& a, const Matrix<T>& b, int order) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!equal_to_order(a(i, j), b(i, j), order)) return false;
    return true;
}

template <class T>
Matrix<T> truncated(const Matrix<T>& m, int precision) {
    return m.map([&](const T& x) { return x.truncated(precision); });
}

} // namespace morsekit::homalg
