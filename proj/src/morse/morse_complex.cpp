#include "morsekit/morse/morse_complex.hpp"

#include "morsekit/flow/validate.hpp"

#include <algorithm>

namespace morsekit::morse {

using flow::Direction;
using flow::TerminusKind;

namespace {

std::vector<std::vector<std::string>> bases_of(const flow::Scene& scene) {
    std::vector<std::vector<std::string>> bases(3);
    for (const auto& c : scene.critical_points()) bases[static_cast<std::size_t>(c.index)].push_back(c.id);
    return bases;
}

std::size_t position_in(const std::vector<std::string>& basis, const std::string& id) {
    return static_cast<std::size_t>(std::find(basis.begin(), basis.end(), id) - basis.begin());
}

} // namespace

MorseBuild build_morse(const flow::Scene& scene) {
    if (scene.kind() != flow::SceneKind::RealValued) fail(ErrorCode::InvalidArgument, "Morse complexes need a real-valued scene; use the Novikov builder");
    MorseBuild out;
    out.separatrices = flow::extract_separatrices(scene);
    const auto diag = flow::check_almost_transversality(scene, out.separatrices);
    if (!diag.pass) {
        std::string pairs;
        for (const auto& [a, b] : diag.connections) pairs += " " + a + "->" + b;
        fail(ErrorCode::TransversalityFailure, "saddle connection:" + pairs);
    }
    const auto bases = bases_of(scene);
    homalg::IntMatrix d1(bases[0].size(), bases[1].size()), d2(bases[1].size(), bases[2].size());
    for (const auto& s : out.separatrices) {
        if (s.terminus.kind != TerminusKind::Critical) fail(ErrorCode::TransversalityFailure, "separatrix did not reach a critical point");
        const auto& from = scene.critical(*s.origin).id;
        const auto& to = scene.critical(s.terminus.critical).id;
        if (s.direction == Direction::Descending)
            d1(position_in(bases[0], to), position_in(bases[1], from)) += s.sign;
        else
            d2(position_in(bases[1], from), position_in(bases[2], to)) += s.sign;
    }
    try {
        out.complex = homalg::IntComplex(bases, {d1, d2});
        out.complex.check_square_zero();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::BoundarySquareNonzero) fail(ErrorCode::SignInconsistency, e.what());
        throw;
    }
    return out;
}

homalg::IntComplex build_morse_complex(const flow::Scene& scene) { return build_morse(scene).complex; }

StabilityReport stability_experiment(const flow::Scene& scene, double delta, int trials, std::uint64_t seed) {
    const auto base = build_morse_complex(scene);
    StabilityReport r;
    r.delta = delta;
    r.trials = trials;
    for (int i = 0; i < trials; ++i) {
        StabilityTrial t;
        t.seed = seed + static_cast<std::uint64_t>(i);
        try {
            const auto perturbed = flow::perturb(scene, t.seed, delta);
            t.validated = true;
            const auto c = build_morse_complex(perturbed);
            t.identical = basis_preserving_equal(base, c);
            if (!t.identical) t.detail = "incidence matrices differ";
        } catch (const Error& e) {
            t.detail = e.what();
        }
        if (t.identical) ++r.identical;
        r.details.push_back(t);
    }
    return r;
}

double stability_threshold(const flow::Scene& scene, double start, double factor, int steps, int trials, std::uint64_t seed) {
    double best = 0, delta = start;
    for (int k = 0; k < steps; ++k, delta *= factor) {
        if (!stability_experiment(scene, delta, trials, seed).all_identical()) break;
        best = delta;
    }
    return best;
}

nlohmann::json to_json(const StabilityReport& r) {
    nlohmann::json trials = nlohmann::json::array();
    for (const auto& t : r.details) {
        nlohmann::json j = {{"seed", t.seed}, {"validated", t.validated}, {"identical", t.identical}};
        if (!t.detail.empty()) j["detail"] = t.detail;
        trials.push_back(j);
    }
    return {{"delta", r.delta}, {"trials", r.trials}, {"identical", r.identical}, {"pass", r.all_identical()}, {"details", trials}};
}

} // namespace morsekit::morse
