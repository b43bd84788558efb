#pragma once

#include "morsekit/flow/separatrix.hpp"

namespace morsekit::flow {

using Polyline = std::vector<Vec3>;

/// The closure of a saddle's descending (or ascending) disc as one polyline
/// through the saddle, oriented along +vectors[0] (resp. +vectors[1]).
Polyline disc_curve(const Scene& scene, std::size_t saddle, Direction dir, std::optional<double> span = std::nullopt, const Shift& at = {0, 0});

struct Crossing {
    Vec3 point;
    Shift translate{0, 0}; ///< lattice translate applied to the second polyline
    int sign = 0;          ///< sign of det(tangent of a, tangent of b) in the chart
    double sine = 0;       ///< |sin| of the crossing angle
};

/// Transverse crossings of planar polylines a and b + k, over all lattice
/// translates k when `periodic`. Segment parameters are half-open, so a
/// crossing at a shared vertex is counted once. Throws TransversalityFailure
/// on overlapping collinear segments or crossings with |sin| < min_sine.
std::vector<Crossing> crossings(const Polyline& a, const Polyline& b, bool periodic, double min_sine = 1e-6);

/// Planar distance from x to b (and its lattice translates when periodic).
double distance_to_polyline(const Vec3& x, const Polyline& b, bool periodic);

} // namespace morsekit::flow
