#pragma once

#include "morsekit/rings/laurent_series.hpp"
#include "morsekit/rings/truncated_series.hpp"

namespace morsekit::rings {

/// Element of the multiplicative group 1 + tZ[[t]] known modulo t^order.
class WittUnit {
public:
    explicit WittUnit(int order = kDefaultOrder) : series_(TruncatedSeries<Integer>::one(order)) {}

    /// Throws InvalidArgument unless the constant term is 1.
    explicit WittUnit(TruncatedSeries<Integer> series);

    const TruncatedSeries<Integer>& series() const { return series_; }
    int order() const { return series_.order(); }
    const Integer& operator[](int k) const { return series_[k]; }

    WittUnit inverse() const { return WittUnit(series_.inverse()); }
    WittUnit truncated(int order) const { return WittUnit(series_.truncated(order)); }
    bool is_one() const { return series_ == TruncatedSeries<Integer>::one(order()); }

    friend WittUnit operator*(const WittUnit& a, const WittUnit& b) { return WittUnit(a.series_ * b.series_); }
    friend bool operator==(const WittUnit& a, const WittUnit& b) { return a.series_ == b.series_; }

private:
    TruncatedSeries<Integer> series_;
};

/// exp of a series with zero constant term, computed over Q. Exact.
TruncatedSeries<Rational> exp_rational(const TruncatedSeries<Rational>& a);

/// exp of a series with zero constant term; every output coefficient must be
/// an integer (NonIntegral otherwise).
WittUnit series_exp(const TruncatedSeries<Rational>& a);

/// Logarithm of a unit with free term 1.
TruncatedSeries<Rational> series_log(const WittUnit& a);
TruncatedSeries<Rational> series_log(const TruncatedSeries<Rational>& a);

/// Strips the factor ±t^valuation from a unit of Z((t)), landing in 1 + tZ[[t]].
/// The result order is the number of known coefficients of u, capped at `order`.
WittUnit normalize_torsion(const NovikovSeries& u, int order = kDefaultOrder);

std::string to_string(const WittUnit& w);

} // namespace morsekit::rings
