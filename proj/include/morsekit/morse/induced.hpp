#pragma once

#include "morsekit/flow/polyline.hpp"
#include "morsekit/homalg/homology.hpp"

namespace morsekit::morse {

/// Affine self-map x -> M x + c of the flat torus chart (M integral).
struct TorusMap {
    flow::Mat2 linear = flow::Mat2::Identity();
    flow::Vec2 offset = flow::Vec2::Zero();

    flow::Vec3 apply(const flow::Vec3& x) const;
    int degree() const;
    /// All x in [0,1)^2 (shifted by `window`) with M x + c = y mod Z^2.
    std::vector<flow::Vec3> preimages(const flow::Vec3& y, const flow::Vec2& window = flow::Vec2::Zero()) const;
    TorusMap after(const TorusMap& g) const;

    static TorusMap identity() { return {}; }
    static TorusMap from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// Chain map of Morse complexes from intersection numbers of A(D(p, v1)) with
/// D(q, -v2):
///   degree 2: preimages x of q with x in D(p), or(p) sign det A' or(q);
///   degree 1: crossings of A(D(p)) with D(q, -v2) oriented by det(e_q, g) = 1;
///   degree 0: A(p) lies in the basin of q.
/// Throws TransversalityFailure or ChainMapViolation.
homalg::IntChainMap induced_map(const TorusMap& a, const flow::Scene& source, const flow::Scene& target);

} // namespace morsekit::morse
