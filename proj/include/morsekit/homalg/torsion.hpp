#pragma once

#include "morsekit/homalg/homology.hpp"
#include "morsekit/rings/witt.hpp"

#include <cstdint>
#include <optional>

namespace morsekit::homalg {

/// Whitehead torsion of a based complex that is acyclic over Q((t)), as a unit
/// of 1 + tZ[[t]] known modulo t^order. The complex 0 -> L -> L with d = u has
/// torsion u (up to the stripped factor ±t^k).
///
/// A chain contraction G is built degree by degree; with `seed` set, G is
/// perturbed by d R for random R, which must not change the answer.
/// Throws NotAcyclic, NonIntegral or PrecisionExhausted.
rings::WittUnit torsion(const NovikovComplex& c, int order = rings::kDefaultOrder, std::optional<std::uint64_t> seed = std::nullopt);

} // namespace morsekit::homalg
