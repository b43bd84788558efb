#pragma once

#include "morsekit/error.hpp"
#include "morsekit/rings/scalar.hpp"
#include "morsekit/rings/truncated_series.hpp"

#include <algorithm>
#include <climits>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace morsekit::rings {

/// Precision marker for series whose coefficients are known in every degree
/// (Laurent polynomials).
inline constexpr int kExact = INT_MAX / 4;

namespace detail {
inline int sat_add(int a, int b) {
    if (a >= kExact || b >= kExact) return kExact;
    const long long s = static_cast<long long>(a) + b;
    if (s >= kExact) return kExact;
    if (s <= -kExact) return -kExact;
    return static_cast<int>(s);
}
} // namespace detail

/// Element of R((t)) known up to an absolute precision.
///
/// Coefficients of t^e are known for every e < precision(). The stored vector
/// covers exponents valuation() .. valuation()+size-1 with a nonzero first
/// entry; trailing known zeros are not stored. The zero series is stored with
/// empty coefficients and valuation 0, so equality is structural.
template <class R>
class LaurentSeries {
public:
    LaurentSeries() = default;

    LaurentSeries(int value) : LaurentSeries(monomial(R(value), 0)) {} // NOLINT

    static LaurentSeries zero(int precision = kExact) {
        LaurentSeries s;
        s.precision_ = precision;
        return s;
    }

    static LaurentSeries one() { return monomial(R(1), 0); }

    static LaurentSeries monomial(R c, int exponent, int precision = kExact) {
        return from_coeffs(exponent, {std::move(c)}, precision);
    }

    /// Builds a series from coefficients of t^start, t^{start+1}, ...
    static LaurentSeries from_coeffs(int start, std::vector<R> coeffs, int precision = kExact) {
        LaurentSeries s;
        s.valuation_ = start;
        s.coeffs_ = std::move(coeffs);
        s.precision_ = precision;
        s.normalize();
        return s;
    }

    /// Embeds a truncated power series t^shift * s with precision shift + order.
    static LaurentSeries from_truncated(const TruncatedSeries<R>& s, int shift = 0) {
        return from_coeffs(shift, s.coeffs(), shift + s.order());
    }

    int valuation() const { return valuation_; }
    int precision() const { return precision_; }
    bool is_exact() const { return precision_ >= kExact; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<R>& coeffs() const { return coeffs_; }

    /// Lowest exponent that may carry a nonzero coefficient.
    int low() const { return is_zero() ? precision_ : valuation_; }

    /// Number of known coefficients starting at the valuation.
    int relative_order() const { return is_zero() ? 0 : precision_ - valuation_; }

    const R& leading() const {
        if (is_zero()) fail(ErrorCode::Precision, "leading coefficient of a series that is zero to its precision");
        return coeffs_.front();
    }

    R coeff(int exponent) const {
        if (exponent >= precision_) fail(ErrorCode::Precision, "coefficient of t^" + std::to_string(exponent) + " is beyond the known precision");
        if (is_zero() || exponent < valuation_) return R(0);
        const auto k = static_cast<std::size_t>(exponent - valuation_);
        return k < coeffs_.size() ? coeffs_[k] : R(0);
    }

    /// Highest stored exponent + 1 (the end of the nonzero support).
    int support_end() const { return valuation_ + static_cast<int>(coeffs_.size()); }

    LaurentSeries truncated(int precision) const {
        LaurentSeries s(*this);
        s.precision_ = std::min(precision_, precision);
        s.normalize();
        return s;
    }

    /// Multiplication by t^k.
    LaurentSeries shifted(int k) const {
        LaurentSeries s(*this);
        if (!s.is_zero()) s.valuation_ += k;
        s.precision_ = detail::sat_add(precision_, k);
        return s;
    }

    LaurentSeries operator-() const {
        LaurentSeries s(*this);
        for (auto& c : s.coeffs_) c = -c;
        return s;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, false); }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, true); }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        const int prec = std::min(detail::sat_add(a.low(), b.precision_), detail::sat_add(b.low(), a.precision_));
        if (a.is_zero() || b.is_zero()) return zero(prec);
        const int start = a.valuation_ + b.valuation_;
        std::size_t len = a.coeffs_.size() + b.coeffs_.size() - 1;
        if (prec < kExact) len = std::min<std::size_t>(len, static_cast<std::size_t>(std::max(0, prec - start)));
        std::vector<R> c(len, R(0));
        for (std::size_t i = 0; i < a.coeffs_.size() && i < len; ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size() && i + j < len; ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return from_coeffs(start, std::move(c), prec);
    }

    LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
    LaurentSeries& operator-=(const LaurentSeries& o) { return *this = *this - o; }
    LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

    /// Multiplicative inverse. The leading coefficient must be a unit of R.
    /// Exact inputs produce `max_relative_order` known coefficients.
    LaurentSeries inverse(int max_relative_order = kDefaultOrder) const {
        if (is_zero()) fail(ErrorCode::Precision, "cannot invert a series that is zero to its precision");
        if (!ScalarTraits<R>::is_unit(leading())) fail(ErrorCode::NotAUnit, "leading coefficient is not a unit");
        const int n = std::min(relative_order(), max_relative_order);
        std::vector<R> body(static_cast<std::size_t>(n), R(0));
        for (int k = 0; k < n && static_cast<std::size_t>(k) < coeffs_.size(); ++k) body[static_cast<std::size_t>(k)] = coeffs_[static_cast<std::size_t>(k)];
        const TruncatedSeries<R> inv = TruncatedSeries<R>(std::move(body), n).inverse();
        return from_coeffs(-valuation_, inv.coeffs(), -valuation_ + n);
    }

    /// True when both series agree on every exponent below `order`.
    /// Throws PrecisionError if either side is not known that far.
    friend bool agree_to(const LaurentSeries& a, const LaurentSeries& b, int order) {
        if (a.precision_ < order || b.precision_ < order)
            fail(ErrorCode::Precision, "comparison to order " + std::to_string(order) + " exceeds the known precision");
        const int lo = std::min(a.low(), b.low());
        for (int e = lo; e < order; ++e)
            if (a.coeff(e) != b.coeff(e)) return false;
        return true;
    }

    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        return a.valuation_ == b.valuation_ && a.precision_ == b.precision_ && a.coeffs_ == b.coeffs_;
    }

private:
    static LaurentSeries combine(const LaurentSeries& a, const LaurentSeries& b, bool subtract) {
        const int prec = std::min(a.precision_, b.precision_);
        if (a.is_zero() && b.is_zero()) return zero(prec);
        int start = std::min(a.is_zero() ? b.valuation_ : a.valuation_, b.is_zero() ? a.valuation_ : b.valuation_);
        int end = std::max(a.support_end(), b.support_end());
        if (prec < kExact) end = std::min(end, prec);
        if (end <= start) return zero(prec);
        std::vector<R> c(static_cast<std::size_t>(end - start), R(0));
        auto accumulate = [&](const LaurentSeries& s, bool neg) {
            for (std::size_t k = 0; k < s.coeffs_.size(); ++k) {
                const int e = s.valuation_ + static_cast<int>(k);
                if (e < start || e >= end) continue;
                if (neg) c[static_cast<std::size_t>(e - start)] -= s.coeffs_[k];
                else c[static_cast<std::size_t>(e - start)] += s.coeffs_[k];
            }
        };
        accumulate(a, false);
        accumulate(b, subtract);
        return from_coeffs(start, std::move(c), prec);
    }

    void normalize() {
        if (precision_ < kExact) {
            const long long keep = static_cast<long long>(precision_) - valuation_;
            if (keep <= 0) coeffs_.clear();
            else if (coeffs_.size() > static_cast<std::size_t>(keep)) coeffs_.resize(static_cast<std::size_t>(keep));
        }
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
        if (lead == coeffs_.size()) {
            coeffs_.clear();
        } else if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
            valuation_ += static_cast<int>(lead);
        }
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
        if (coeffs_.empty()) valuation_ = 0;
    }

    int valuation_ = 0;
    std::vector<R> coeffs_;
    int precision_ = kExact;
};

/// Element of Z((t)).
using NovikovSeries = LaurentSeries<Integer>;
/// Element of Q((t)), the fraction field used for rank and determinant work.
using RationalLaurent = LaurentSeries<Rational>;

template <class To, class From>
LaurentSeries<To> convert(const LaurentSeries<From>& s) {
    std::vector<To> c;
    c.reserve(s.coeffs().size());
    for (const auto& x : s.coeffs()) c.emplace_back(x);
    return LaurentSeries<To>::from_coeffs(s.valuation(), std::move(c), s.precision());
}

/// Converts a Q((t)) series to Z((t)); nullopt if any known coefficient is fractional.
std::optional<NovikovSeries> to_integral(const RationalLaurent& s);

inline NovikovSeries invert(const NovikovSeries& a, int max_relative_order = kDefaultOrder) {
    return a.inverse(max_relative_order);
}

/// Human-readable rendering such as "1 - 3t + t^2 + O(t^8)".
std::string to_string(const NovikovSeries& s);
std::string to_string(const RationalLaurent& s);

} // namespace morsekit::rings
