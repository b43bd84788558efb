#pragma once

#include "morsekit/flow/separatrix.hpp"
#include "morsekit/homalg/homology.hpp"

#include <cstdint>

namespace morsekit::morse {

struct MorseBuild {
    homalg::IntComplex complex;
    std::vector<flow::Separatrix> separatrices;
};

/// Morse complex of a real-valued scene: degree k spanned by the index-k
/// critical points ordered by value; entries are signed separatrix counts.
/// Throws TransversalityFailure on a saddle connection and SignInconsistency
/// if the boundary does not square to zero.
MorseBuild build_morse(const flow::Scene& scene);
homalg::IntComplex build_morse_complex(const flow::Scene& scene);

struct StabilityTrial {
    std::uint64_t seed = 0;
    bool validated = false;
    bool identical = false;
    std::string detail;
};

struct StabilityReport {
    double delta = 0;
    int trials = 0;
    int identical = 0;
    std::vector<StabilityTrial> details;
    bool all_identical() const { return identical == trials; }
};

/// Rebuilds the complex for `trials` seeded perturbations of size delta and
/// compares incidence matrices entry by entry under the label identification.
StabilityReport stability_experiment(const flow::Scene& scene, double delta, int trials, std::uint64_t seed);

/// Largest delta in start * factor^k (k < steps) for which every trial was identical; 0 if none.
double stability_threshold(const flow::Scene& scene, double start, double factor, int steps, int trials, std::uint64_t seed);

nlohmann::json to_json(const StabilityReport& r);

} // namespace morsekit::morse
