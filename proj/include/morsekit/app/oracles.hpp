#pragma once

#include "morsekit/homalg/homology.hpp"
#include "morsekit/homalg/smith.hpp"
#include "morsekit/rings/witt.hpp"

#include <json.hpp>

#include <cstdint>
#include <random>

namespace morsekit::app {

/// Invariant factors from gcds of k x k minors: d_1 ... d_k = gcd of all k-minors.
std::vector<rings::Integer> invariants_by_minors(const homalg::IntMatrix& m);

/// Polynomial in Z[t] with `len` coefficients drawn from [-3, 3].
rings::NovikovSeries random_poly(std::mt19937& rng, int len);

struct AcyclicSample {
    homalg::NovikovComplex complex;
    rings::WittUnit expected;
};

/// Sum of elementary complexes u: C_1 -> C_0 and u: C_2 -> C_1, twisted by
/// unipotent base changes over Z[t]. `expected` is the product of the normalized
/// u for (1,0) pieces and their inverses for (2,1) pieces.
AcyclicSample random_acyclic(std::mt19937& rng, int order);

struct PropertyCount {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string first_failure;
    bool pass() const { return failures == 0 && cases > 0; }
};

/// Ring axioms, exp/log round trips, SNF vs minor gcds (200 matrices up to 6x6,
/// entries in [-9, 9]) and torsion multiplicativity over mapping cones.
std::vector<PropertyCount> algebra_properties(std::uint64_t seed);

nlohmann::json to_json(const PropertyCount& p);

} // namespace morsekit::app
