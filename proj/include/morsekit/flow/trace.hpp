#pragma once

#include "morsekit/flow/scene.hpp"

namespace morsekit::flow {

enum class Direction { Descending = -1, Ascending = 1 };

std::string to_string(Direction d);

struct StopRule {
    /// Levels to cross in order (decreasing when descending). Each crossing is
    /// recorded; the trace stops after the last one.
    std::vector<double> levels;
    /// Stop on entering a trap ball around a critical point.
    bool trap = true;
    /// Overrides the scene's trap radius when positive.
    double trap_radius = 0;
};

enum class TerminusKind { Critical, Level };

struct Terminus {
    TerminusKind kind = TerminusKind::Level;
    std::size_t critical = 0; ///< index into scene.critical_points() when kind == Critical
    Shift shift{0, 0};        ///< lattice translate of that critical point
    Vec3 point = Vec3::Zero();
};

struct Separatrix {
    std::optional<std::size_t> origin; ///< critical point the trace was seeded from
    Direction direction = Direction::Descending;
    int branch = 0;     ///< +1 or -1 along the seeding eigenvector
    std::vector<Vec3> samples;
    std::vector<double> arclength;
    std::vector<Vec3> crossings; ///< one per crossed level
    Terminus terminus;
    int sign = 0;
};

/// Adaptive RK4 (step doubling) along the unit field +-v/|v| with arc length
/// as parameter. Samples start at `start` and end at the stopping point (or at
/// the trapping critical point itself). The trap ball of `origin` (at origin_shift)
/// is ignored until the trace has left it.
/// Throws StepCollapse or MaxLengthExceeded.
Separatrix trace(const Scene& scene, const Vec3& start, Direction dir, const StopRule& stop, std::optional<std::size_t> origin = std::nullopt,
                 Shift origin_shift = {0, 0});

/// x, y, f, arclength rows with a header line.
std::string to_csv(const Scene& scene, const Separatrix& s);

} // namespace morsekit::flow
