#pragma once

#include "morsekit/novikov/novikov.hpp"
#include "morsekit/rings/witt.hpp"
#include "morsekit/zeta/zeta.hpp"

namespace morsekit::verify {

using NovikovChainMap = homalg::ChainMap<rings::NovikovSeries>;

/// Deck-invariant cell structure of the cyclic covering, given by the cells of
/// one fundamental domain and their twisted boundaries over Z[t, t^-1].
struct CellStructure {
    enum class Kind { Grid, Fiber };
    Kind kind = Kind::Grid;
    std::string name;
    homalg::NovikovComplex complex;
    /// Grid: cols x rows rectangles of [x0, x0 + 1) x [y0, y0 + 1); crossing
    /// x = x0 + 1 applies t^-1.
    int cols = 0, rows = 0;
    double x0 = 0, y0 = 0;

    int euler_characteristic() const;
};

/// Square grid on the flat torus chart; vertices v(i,j), edges h(i,j) to
/// v(i+1,j) and w(i,j) to v(i,j+1), faces f(i,j) oriented by (e_x, e_y).
CellStructure grid_cells(int cols, int rows, double x0, double y0);

/// Default grid for a shipped circle-valued scene.
CellStructure default_grid(const flow::Scene& scene);

/// Cells e and e x I of a mapping torus over the fiber structure, with
/// d(e x I) = (de) x I + (-1)^|e| (t A e - e). Torus fibers use one vertex, two
/// edges and a face; circle fibers use `subdivision` vertices (z -> z^d cellular).
CellStructure fiber_cells(const zeta::MappingTorus& m, int subdivision = 1);

/// xi(sigma) = sum_q (sigma . D(q, -v)) q gathered by deck power: vertices by
/// the basin they descend into, edges by signed crossings with the ascending
/// curves of saddles, faces by the maxima they contain (or(face) or(m)).
/// Throws TransversalityFailure, ChainMapViolation.
NovikovChainMap schutz_map(const flow::Scene& scene, double lambda, const CellStructure& cells, int order);
/// The zero map from the cells to the (empty) Novikov complex of a mapping torus.
NovikovChainMap schutz_map(const zeta::MappingTorus& m, const CellStructure& cells, int order);

/// w = torsion(cone(xi))^-1, coefficients of t^0..t^order. NotAcyclic, NotAUnit.
rings::WittUnit torsion_w(const NovikovChainMap& xi, int order);

struct Verdict {
    std::string scene;
    int order = 0;
    bool applicable = true;
    std::string diagnostic;
    std::optional<rings::WittUnit> w, zeta, product;
    std::optional<int> first_mismatch;
    bool pass = false;
};

Verdict check_torsion_zeta(const flow::Scene& scene, const CellStructure& cells, double lambda, int order);
Verdict check_torsion_zeta(const zeta::MappingTorus& m, const CellStructure& cells, double lambda, int order);

nlohmann::json to_json(const Verdict& v);

} // namespace morsekit::verify
