#include "morsekit/rings/laurent_series.hpp"
#include "morsekit/rings/truncated_series.hpp"
#include "morsekit/rings/witt.hpp"

#include <sstream>

namespace morsekit::rings {

namespace {

template <class R>
void append_term(std::ostringstream& os, const R& c, int exponent, bool first) {
    R mag = c < 0 ? R(-c) : c;
    if (first) {
        if (c < 0) os << "-";
    } else {
        os << (c < 0 ? " - " : " + ");
    }
    const bool unit = mag == 1;
    if (!unit || exponent == 0) os << mag;
    if (exponent != 0) {
        os << "t";
        if (exponent != 1) os << "^" << exponent;
    }
}

template <class R>
std::string render_laurent(const LaurentSeries<R>& s) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < s.coeffs().size(); ++k) {
        const R& c = s.coeffs()[k];
        if (c == 0) continue;
        append_term(os, c, s.valuation() + static_cast<int>(k), first);
        first = false;
    }
    if (first) os << "0";
    if (!s.is_exact()) os << " + O(t^" << s.precision() << ")";
    return os.str();
}

template <class R>
std::string render_truncated(const TruncatedSeries<R>& s) {
    return render_laurent(LaurentSeries<R>::from_truncated(s));
}

} // namespace

std::string to_string(const TruncatedSeries<Integer>& s) { return render_truncated(s); }
std::string to_string(const TruncatedSeries<Rational>& s) { return render_truncated(s); }
std::string to_string(const NovikovSeries& s) { return render_laurent(s); }
std::string to_string(const RationalLaurent& s) { return render_laurent(s); }
std::string to_string(const WittUnit& w) { return to_string(w.series()); }

std::optional<NovikovSeries> to_integral(const RationalLaurent& s) {
    std::vector<Integer> c;
    c.reserve(s.coeffs().size());
    for (const auto& q : s.coeffs()) {
        if (!is_integral(q)) return std::nullopt;
        c.push_back(to_integer(q));
    }
    return NovikovSeries::from_coeffs(s.valuation(), std::move(c), s.precision());
}

WittUnit::WittUnit(TruncatedSeries<Integer> series) : series_(std::move(series)) {
    if (series_[0] != 1) fail(ErrorCode::InvalidArgument, "Witt unit must have free term 1");
}

TruncatedSeries<Rational> exp_rational(const TruncatedSeries<Rational>& a) {
    if (a[0] != 0) fail(ErrorCode::InvalidArgument, "exp requires a zero constant term");
    // b' = a' b  =>  n b_n = sum_{k=1..n} k a_k b_{n-k}
    TruncatedSeries<Rational> b(a.order());
    b[0] = 1;
    for (int n = 1; n < a.order(); ++n) {
        Rational acc = 0;
        for (int k = 1; k <= n; ++k) acc += Rational(k) * a[k] * b[n - k];
        b[n] = acc / n;
    }
    return b;
}

WittUnit series_exp(const TruncatedSeries<Rational>& a) {
    const auto b = exp_rational(a);
    std::vector<Integer> c;
    c.reserve(static_cast<std::size_t>(b.order()));
    for (int k = 0; k < b.order(); ++k) {
        if (!is_integral(b[k]))
            fail(ErrorCode::NonIntegral, "exp coefficient of t^" + std::to_string(k) + " is " + b[k].str() + ", not an integer");
        c.push_back(to_integer(b[k]));
    }
    return WittUnit(TruncatedSeries<Integer>(std::move(c), b.order()));
}

TruncatedSeries<Rational> series_log(const WittUnit& a) { return series_log(convert<Rational>(a.series())); }

TruncatedSeries<Rational> series_log(const TruncatedSeries<Rational>& a) {
    if (a[0] != 1) fail(ErrorCode::InvalidArgument, "log requires free term 1");
    // l' = a'/a
    const auto inv = a.inverse();
    TruncatedSeries<Rational> deriv(a.order());
    for (int k = 1; k < a.order(); ++k) deriv[k - 1] = Rational(k) * a[k];
    const auto q = deriv * inv;
    TruncatedSeries<Rational> l(a.order());
    for (int k = 1; k < a.order(); ++k) l[k] = q[k - 1] / k;
    return l;
}

WittUnit normalize_torsion(const NovikovSeries& u, int order) {
    if (u.is_zero()) fail(ErrorCode::Precision, "torsion representative is zero to its precision");
    const Integer lead = u.leading();
    if (!ScalarTraits<Integer>::is_unit(lead)) fail(ErrorCode::NotAUnit, "leading coefficient " + lead.str() + " is not ±1");
    const int n = std::min(u.relative_order(), order);
    TruncatedSeries<Integer> body(n);
    for (int k = 0; k < n && static_cast<std::size_t>(k) < u.coeffs().size(); ++k) body[k] = u.coeffs()[static_cast<std::size_t>(k)] * lead;
    return WittUnit(std::move(body));
}

} // namespace morsekit::rings
