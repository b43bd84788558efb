#include "morsekit/app/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace morsekit::app {

nlohmann::json to_json(const RunConfig& c) {
    return {{"scene", c.scene},
            {"lambda", c.lambda ? nlohmann::json(*c.lambda) : nlohmann::json()},
            {"order", c.order},
            {"delta", c.delta},
            {"trials", c.trials},
            {"seed", c.seed},
            {"tolerance_scale", c.tolerance_scale}};
}

std::string output_dir(const RunConfig& c) {
    if (!c.out.empty()) return c.out;
    if (const char* env = std::getenv("MORSEKIT_OUT"); env && *env) return env;
    return "morsekit-out";
}

double LoadedScene::lambda(const RunConfig& c) const {
    if (c.lambda) return *c.lambda;
    const auto& p = spec.at("params");
    if (p.contains("lambda")) return p.at("lambda").get<double>();
    return torus ? 0.3 : 1.0;
}

LoadedScene load_scene(const std::string& ref, double tolerance_scale) {
    if (!(tolerance_scale > 0)) fail(ErrorCode::Config, "tolerance scale must be positive");
    nlohmann::json spec;
    if (std::filesystem::is_regular_file(ref)) {
        std::ifstream in(ref);
        try {
            spec = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::Config, "cannot parse " + ref + ": " + e.what());
        }
        if (!spec.is_object() || !spec.contains("family") || !spec.at("family").is_string())
            fail(ErrorCode::Config, ref + ": scene file needs a string 'family'");
    } else {
        spec = {{"family", ref}};
    }
    if (!spec.contains("params")) spec["params"] = nlohmann::json::object();
    if (!spec.contains("overrides")) spec["overrides"] = nlohmann::json::object();

    LoadedScene out;
    if (spec.at("family") == "mapping_torus") {
        auto params = spec.at("params");
        const auto lambda = params.contains("lambda") ? params.at("lambda") : nlohmann::json();
        params.erase("lambda");
        out.torus = zeta::MappingTorus::from_json(params);
        spec["params"] = out.torus->to_json();
        if (!lambda.is_null()) spec["params"]["lambda"] = lambda;
    } else {
        auto opt = flow::numeric_options_from_json(spec.at("overrides"));
        opt.scale_tolerance(tolerance_scale);
        out.scene = flow::make_scene(spec.at("family").get<std::string>(), spec.at("params"), opt);
        spec["params"] = out.scene->params().at("params");
        spec["overrides"] = flow::to_json(opt);
    }
    out.spec = spec;
    return out;
}

} // namespace morsekit::app
