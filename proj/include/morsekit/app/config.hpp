#pragma once

#include "morsekit/flow/scene.hpp"
#include "morsekit/zeta/mapping_torus.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace morsekit::app {

struct RunConfig {
    std::string scene;                 ///< family name or path to a scene file
    std::optional<double> lambda;
    int order = 8;
    double delta = 1e-3;
    int trials = 20;
    std::uint64_t seed = 1;
    std::string out;
    double tolerance_scale = 1.0;
};

nlohmann::json to_json(const RunConfig& c);

/// Output directory: --out, else $MORSEKIT_OUT, else "morsekit-out".
std::string output_dir(const RunConfig& c);

/// A resolved scene reference: a flow scene or a mapping torus.
struct LoadedScene {
    nlohmann::json spec; ///< {family, params, overrides} as resolved
    std::optional<flow::Scene> scene;
    std::optional<zeta::MappingTorus> torus;

    std::string family() const { return spec.at("family").get<std::string>(); }
    /// --lambda, else params.lambda, else 0.3 for mapping tori and 1.0 otherwise.
    double lambda(const RunConfig& c) const;
};

/// `ref` is a path to a JSON scene file, or a family name taken with default
/// parameters. Throws Config on unreadable files and unknown families.
LoadedScene load_scene(const std::string& ref, double tolerance_scale = 1.0);

} // namespace morsekit::app
