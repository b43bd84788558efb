#pragma once

#include "morsekit/flow/separatrix.hpp"
#include "morsekit/homalg/complex.hpp"
#include "morsekit/morse/induced.hpp"

namespace morsekit::novikov {

using NovikovMatrix = homalg::LaurentMatrix;
using NovikovChainMap = homalg::ChainMap<rings::NovikovSeries>;

/// Lattice shift of the basis lift of critical point i: its value lies in (lambda - 1, lambda].
int basis_shift(const flow::Scene& scene, std::size_t i, double lambda);

/// RegularValueError if lambda is within tol of a critical value mod 1.
void require_regular(const flow::Scene& scene, double lambda, double tol = 1e-6);

/// One lift t^k p of a critical point in the unrolled chart.
struct LiftedPoint {
    std::size_t critical = 0;
    int power = 0; ///< k in t^k p, relative to the basis lift
    flow::Shift shift{0, 0};
    double value = 0;
    std::string label() const;
};

/// Lifted critical points of W_n = F^-1([lambda - n, lambda]).
struct UnrolledCobordism {
    double lambda = 0;
    int depth = 0;
    std::vector<LiftedPoint> points;
};

UnrolledCobordism unroll(const flow::Scene& scene, double lambda, int n);

/// Novikov complex over Z((t)), entries known through t^order (precision order + 1).
/// Basis: one lift per deck orbit with value in (lambda - 1, lambda].
/// Throws RegularValueError, TransversalityFailure, BoundarySquareNonzero.
homalg::NovikovComplex build_novikov_complex(const flow::Scene& scene, double lambda, int order);

/// Morse complex of W_n relative to its lower boundary, traced directly on the lifts.
homalg::IntComplex cobordism_morse_complex(const flow::Scene& scene, double lambda, int n);

/// The truncation N / t^n N as an integral complex on the lifts t^k p, k < n.
homalg::IntComplex truncate_novikov(const homalg::NovikovComplex& c, const flow::Scene& scene, double lambda, int n);

/// Cellular chain complex of (V, t^n V) for a cylinder end cut into n annuli.
homalg::IntComplex strip_relative_cells(int n);

struct TowerReport {
    int n = 0;
    bool boundaries_equal = false;
    std::string first_difference;
    std::vector<int> morse_betti;
    std::vector<int> cellular_betti;
    bool homology_equal = false;
    bool pass() const { return boundaries_equal && homology_equal; }
};

/// Compares the truncated Novikov boundary with the Morse boundary of W_n
/// entrywise and their homology with the cellular homology of (V, t^n V).
TowerReport truncation_tower_check(const flow::Scene& scene, double lambda, int n, const homalg::NovikovComplex* novikov = nullptr);

nlohmann::json to_json(const TowerReport& r);

/// Chain map of Novikov complexes induced by a lift of a torus map to the
/// unrolled chart (linear part must fix the x direction: first row (1, 0)).
/// Entries are gathered per deck power; t-equivariance and the chain-map
/// identity are checked to the working precision.
/// Throws LiftAmbiguity, TransversalityFailure, ChainMapViolation.
NovikovChainMap novikov_induced_map(const morse::TorusMap& lift, const flow::Scene& source, double lambda_source, const flow::Scene& target,
                                    double lambda_target, int order);

} // namespace morsekit::novikov
