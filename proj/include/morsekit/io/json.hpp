#pragma once

#include "morsekit/homalg/homology.hpp"
#include "morsekit/rings/witt.hpp"

#include <json.hpp>

namespace morsekit::io {

/// Number when it fits in 64 bits, decimal string otherwise.
nlohmann::json integer_json(const rings::Integer& x);
nlohmann::json rational_json(const rings::Rational& x);

/// {"valuation", "coeffs", "order"}; order is the absolute precision (null if exact).
nlohmann::json series_json(const rings::NovikovSeries& s);
rings::NovikovSeries series_from_json(const nlohmann::json& j);
/// Same shape as a series with valuation 0.
nlohmann::json witt_json(const rings::WittUnit& w);

nlohmann::json matrix_json(const homalg::IntMatrix& m);
nlohmann::json matrix_json(const homalg::LaurentMatrix& m);
nlohmann::json matrix_json(const homalg::Matrix<rings::Rational>& m);

/// [{"degree", "basis", "boundary": [[row, col, entry], ...]}, ...]; zero entries omitted.
nlohmann::json complex_json(const homalg::IntComplex& c);
nlohmann::json complex_json(const homalg::NovikovComplex& c);
nlohmann::json chain_map_json(const homalg::IntChainMap& f);
nlohmann::json chain_map_json(const homalg::ChainMap<rings::NovikovSeries>& f);
nlohmann::json homology_json(const homalg::HomologyReport& h);
nlohmann::json homology_json(const homalg::NovikovHomologyReport& h);

} // namespace morsekit::io
