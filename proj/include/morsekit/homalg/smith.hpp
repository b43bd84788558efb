#pragma once

#include "morsekit/homalg/matrix.hpp"
#include "morsekit/rings/scalar.hpp"

#include <vector>

namespace morsekit::homalg {

using IntMatrix = Matrix<rings::Integer>;

struct SmithForm {
    IntMatrix diagonal; ///< same shape as the input
    IntMatrix left;     ///< unimodular, rows x rows
    IntMatrix right;    ///< unimodular, cols x cols
    /// Positive diagonal entries d_1 | d_2 | ... ; zeros are omitted.
    std::vector<rings::Integer> invariants;
};

/// left * m * right == diagonal, with the nonzero diagonal forming a divisibility chain.
SmithForm smith_normal_form(const IntMatrix& m);

/// Determinant of a square integer matrix (fraction-free elimination).
rings::Integer determinant(const IntMatrix& m);

} // namespace morsekit::homalg
