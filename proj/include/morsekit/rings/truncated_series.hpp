#pragma once

#include "morsekit/error.hpp"
#include "morsekit/rings/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace morsekit::rings {

/// Default precision order used when a run does not configure one.
inline constexpr int kDefaultOrder = 16;

/// Power series over R known modulo t^order: the coefficient vector always has
/// exactly `order` entries.
template <class R>
class TruncatedSeries {
public:
    TruncatedSeries() : TruncatedSeries(kDefaultOrder) {}

    explicit TruncatedSeries(int order) : coeffs_(check_order(order)) {}

    TruncatedSeries(std::vector<R> coeffs, int order) : coeffs_(check_order(order)) {
        const auto n = std::min<std::size_t>(coeffs.size(), coeffs_.size());
        std::move(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(n), coeffs_.begin());
    }

    static TruncatedSeries one(int order) {
        TruncatedSeries s(order);
        s.coeffs_[0] = R(1);
        return s;
    }

    int order() const { return static_cast<int>(coeffs_.size()); }
    const std::vector<R>& coeffs() const { return coeffs_; }
    const R& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    R& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const R& c) { return c == 0; });
    }

    TruncatedSeries truncated(int order) const {
        return TruncatedSeries(coeffs_, std::min(order, this->order()));
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        for (int k = 0; k < r.order(); ++k) r[k] = a[k] + b[k];
        return r;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        for (int k = 0; k < r.order(); ++k) r[k] = a[k] - b[k];
        return r;
    }

    TruncatedSeries operator-() const {
        TruncatedSeries r(order());
        for (int k = 0; k < order(); ++k) r[k] = -coeffs_[static_cast<std::size_t>(k)];
        return r;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()));
        for (int i = 0; i < r.order(); ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; i + j < r.order(); ++j) r[i + j] += a[i] * b[j];
        }
        return r;
    }

    TruncatedSeries scaled(const R& c) const {
        TruncatedSeries r(*this);
        for (auto& x : r.coeffs_) x *= c;
        return r;
    }

    /// Inverse in R[[t]]/t^order; the constant term must be a unit of R.
    TruncatedSeries inverse() const {
        if (!ScalarTraits<R>::is_unit(coeffs_[0]))
            fail(ErrorCode::NotAUnit, "constant term is not a unit");
        const R c0inv = ScalarTraits<R>::unit_inverse(coeffs_[0]);
        TruncatedSeries r(order());
        r[0] = c0inv;
        for (int n = 1; n < order(); ++n) {
            R acc(0);
            for (int k = 1; k <= n; ++k) acc += coeffs_[static_cast<std::size_t>(k)] * r[n - k];
            r[n] = -acc * c0inv;
        }
        return r;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    static std::size_t check_order(int order) {
        if (order <= 0) fail(ErrorCode::InvalidArgument, "series order must be positive");
        return static_cast<std::size_t>(order);
    }

    std::vector<R> coeffs_;
};

template <class To, class From>
TruncatedSeries<To> convert(const TruncatedSeries<From>& s) {
    std::vector<To> c;
    c.reserve(s.coeffs().size());
    for (const auto& x : s.coeffs()) c.emplace_back(x);
    return TruncatedSeries<To>(std::move(c), s.order());
}

std::string to_string(const TruncatedSeries<Integer>& s);
std::string to_string(const TruncatedSeries<Rational>& s);

} // namespace morsekit::rings
