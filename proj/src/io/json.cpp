#include "morsekit/io/json.hpp"

#include <limits>

namespace morsekit::io {

using rings::Integer;

nlohmann::json integer_json(const Integer& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) return static_cast<std::int64_t>(x);
    return x.str();
}

nlohmann::json rational_json(const rings::Rational& x) {
    if (denominator(x) == 1) return integer_json(numerator(x));
    return numerator(x).str() + "/" + denominator(x).str();
}

nlohmann::json series_json(const rings::NovikovSeries& s) {
    nlohmann::json coeffs = nlohmann::json::array();
    const int start = s.low();
    for (int e = start; e < s.support_end(); ++e) coeffs.push_back(integer_json(s.coeff(e)));
    nlohmann::json j = {{"valuation", s.is_zero() ? nlohmann::json() : nlohmann::json(start)}, {"coeffs", coeffs}};
    j["order"] = s.is_exact() ? nlohmann::json() : nlohmann::json(s.precision());
    return j;
}

rings::NovikovSeries series_from_json(const nlohmann::json& j) {
    try {
        const int precision = j.contains("order") && !j.at("order").is_null() ? j.at("order").get<int>() : rings::kExact;
        if (!j.contains("valuation") || j.at("valuation").is_null()) return rings::NovikovSeries::zero(precision);
        std::vector<Integer> c;
        for (const auto& x : j.at("coeffs")) c.emplace_back(x.is_string() ? Integer(x.get<std::string>()) : Integer(x.get<std::int64_t>()));
        return rings::NovikovSeries::from_coeffs(j.at("valuation").get<int>(), c, precision);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Config, std::string("bad series: ") + e.what());
    }
}

nlohmann::json witt_json(const rings::WittUnit& w) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (int k = 0; k < w.order(); ++k) coeffs.push_back(integer_json(w[k]));
    return {{"valuation", 0}, {"coeffs", coeffs}, {"order", w.order()}};
}

namespace {

template <class T, class Fn>
nlohmann::json matrix_with(const homalg::Matrix<T>& m, Fn&& fn) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(fn(m(i, j)));
        rows.push_back(row);
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

nlohmann::json entry_json(const Integer& x) { return integer_json(x); }
nlohmann::json entry_json(const rings::NovikovSeries& x) { return series_json(x); }
bool is_zero_entry(const Integer& x) { return x == 0; }
bool is_zero_entry(const rings::NovikovSeries& x) { return x.is_zero(); }

// degree -> {basis, boundary: [[row, col, entry], ...]}
template <class T>
nlohmann::json complex_with(const homalg::BasedComplex<T>& c) {
    nlohmann::json out = nlohmann::json::array();
    for (int k = 0; k <= c.top_degree(); ++k) {
        nlohmann::json triplets = nlohmann::json::array();
        if (k >= 1) {
            const auto d = c.boundary(k);
            for (std::size_t i = 0; i < d.rows(); ++i)
                for (std::size_t j = 0; j < d.cols(); ++j)
                    if (!is_zero_entry(d(i, j))) triplets.push_back({i, j, entry_json(d(i, j))});
        }
        out.push_back({{"degree", k}, {"basis", c.basis(k)}, {"boundary", triplets}});
    }
    return out;
}

template <class T>
nlohmann::json map_with(const homalg::ChainMap<T>& f) {
    nlohmann::json comps = nlohmann::json::array();
    for (int k = 0; k <= f.top_degree(); ++k) comps.push_back(matrix_json(f.component(k)));
    return {{"source", complex_json(f.source())}, {"target", complex_json(f.target())}, {"components", comps}};
}

} // namespace

nlohmann::json matrix_json(const homalg::IntMatrix& m) { return matrix_with(m, integer_json); }
nlohmann::json matrix_json(const homalg::LaurentMatrix& m) { return matrix_with(m, series_json); }
nlohmann::json matrix_json(const homalg::Matrix<rings::Rational>& m) { return matrix_with(m, rational_json); }
nlohmann::json complex_json(const homalg::IntComplex& c) { return complex_with(c); }
nlohmann::json complex_json(const homalg::NovikovComplex& c) { return complex_with(c); }
nlohmann::json chain_map_json(const homalg::IntChainMap& f) { return map_with(f); }
nlohmann::json chain_map_json(const homalg::ChainMap<rings::NovikovSeries>& f) { return map_with(f); }

nlohmann::json homology_json(const homalg::HomologyReport& h) {
    nlohmann::json tors = nlohmann::json::array();
    for (const auto& t : h.torsion) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& x : t) row.push_back(integer_json(x));
        tors.push_back(row);
    }
    return {{"betti", h.betti}, {"torsion", tors}};
}

nlohmann::json homology_json(const homalg::NovikovHomologyReport& h) {
    nlohmann::json tors = nlohmann::json::array();
    for (const auto& t : h.torsion) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& x : t) row.push_back(series_json(x));
        tors.push_back(row);
    }
    return {{"ranks", h.ranks}, {"torsion", tors}};
}

} // namespace morsekit::io
