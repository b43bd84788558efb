#pragma once

#include "morsekit/homalg/matrix.hpp"
#include "morsekit/rings/laurent_series.hpp"

namespace morsekit::homalg {

using LaurentMatrix = Matrix<rings::NovikovSeries>;
using RationalLaurentMatrix = Matrix<rings::RationalLaurent>;

/// Linear algebra over the field Q((t)) with truncated entries.
///
/// An entry that is zero to its known precision is treated as zero only if
/// that precision reaches `zero_floor`; otherwise the pivot decision is
/// undecidable and PrecisionExhausted is raised. `work_order` bounds the
/// relative order produced by each division.
struct FieldOptions {
    int work_order = rings::kDefaultOrder + 8;
    int zero_floor = 1;
};

RationalLaurentMatrix to_rational(const LaurentMatrix& m);

std::size_t rank(const RationalLaurentMatrix& m, const FieldOptions& opt = {});

rings::RationalLaurent determinant(const RationalLaurentMatrix& m, const FieldOptions& opt = {});

/// One solution X of A X = B (free variables set to zero). NotAcyclic if the
/// system is inconsistent.
RationalLaurentMatrix solve(const RationalLaurentMatrix& a, const RationalLaurentMatrix& b, const FieldOptions& opt = {});

} // namespace morsekit::homalg
