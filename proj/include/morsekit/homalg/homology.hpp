#pragma once

#include "morsekit/homalg/complex.hpp"
#include "morsekit/homalg/field_linalg.hpp"
#include "morsekit/homalg/smith.hpp"
#include "morsekit/rings/laurent_series.hpp"

#include <vector>

namespace morsekit::homalg {

using IntComplex = BasedComplex<rings::Integer>;
using NovikovComplex = BasedComplex<rings::NovikovSeries>;
using IntChainMap = ChainMap<rings::Integer>;
using NovikovChainMap = ChainMap<rings::NovikovSeries>;

struct HomologyReport {
    std::vector<int> betti;                           ///< free rank per degree
    std::vector<std::vector<rings::Integer>> torsion; ///< invariant factors > 1 per degree
    friend bool operator==(const HomologyReport&, const HomologyReport&) = default;
};

/// Integral homology from Smith normal forms of consecutive boundaries.
/// Throws BoundarySquareNonzero if d∘d != 0.
HomologyReport homology(const IntComplex& c);

/// Ranks of H_k(c ⊗ Q((t))).
std::vector<int> novikov_homology_ranks(const NovikovComplex& c, const FieldOptions& opt = {});

struct NovikovHomologyReport {
    std::vector<int> ranks;
    /// Non-unit invariant factors of d_{k+1} over Z((t)), normalized to positive
    /// leading coefficient. Nonempty means H_k has torsion.
    std::vector<std::vector<rings::NovikovSeries>> torsion;
};

/// Diagonalizes each boundary over Z((t)) with the Euclidean norm
/// |lowest coefficient| and reports ranks plus non-unit invariant factors.
NovikovHomologyReport novikov_homology(const NovikovComplex& c, int zero_floor = 1);

/// Matrix of the map induced on H_k(-; Q) by an integral chain map, in
/// homology bases extracted deterministically from kernel bases.
Matrix<rings::Rational> induced_on_homology(const IntChainMap& f, int k);

} // namespace morsekit::homalg
