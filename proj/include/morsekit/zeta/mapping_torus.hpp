#pragma once

#include "morsekit/flow/scene.hpp"

namespace morsekit::zeta {

/// Mapping torus of a torus automorphism or of a circle map, with the
/// circle-valued height s and the flow -d/ds + drift * sin^2(pi s) w(x) along
/// the fiber. It has no critical points; its return map on a level is the
/// monodromy composed with the time-one drift.
struct MappingTorus {
    enum class Kind { Linear, Circle };
    Kind kind = Kind::Linear;
    flow::Mat2 monodromy = flow::Mat2::Identity(); ///< Linear: matrix in GL2(Z)
    int degree = 2;                                ///< Circle: y -> d y + amplitude sin(2 pi y) / (2 pi)
    double amplitude = 0;
    double drift = 0;

    int fiber_dimension() const { return kind == Kind::Linear ? 2 : 1; }

    /// Descent from level lambda to lambda - 1 followed by the deck identification, on lifts.
    flow::Vec2 return_map(const flow::Vec2& x, double lambda) const;
    double return_map(double y, double lambda) const;

    /// Action of the monodromy on H_0, H_1, H_2 of the fiber.
    std::vector<flow::Mat2> homology_action() const;

    static MappingTorus from_json(const nlohmann::json& params);
    nlohmann::json to_json() const;
};

/// Default parameters of the "mapping_torus" family.
nlohmann::json mapping_torus_defaults();

} // namespace morsekit::zeta
