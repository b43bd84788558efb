#include "morsekit/flow/separatrix.hpp"

#include <algorithm>

namespace morsekit::flow {

Separatrix trace_branch(const Scene& scene, std::size_t saddle, Direction dir, int branch, std::optional<double> span, const Shift& at) {
    const auto& c = scene.critical(saddle);
    if (c.index != 1) fail(ErrorCode::InvalidArgument, c.id + " is not a saddle");
    const Vec3& e = dir == Direction::Descending ? c.vectors[0] : c.vectors[1];
    const Vec3 start = scene.lift(saddle, at) + scene.options().seed_offset * branch * e;
    StopRule stop;
    if (span) stop.levels.push_back(scene.f(scene.lift(saddle, at)) + (dir == Direction::Descending ? -*span : *span));
    try {
        auto s = trace(scene, start, dir, stop, saddle, at);
        s.branch = branch;
        s.sign = separatrix_sign(scene, s);
        return s;
    } catch (const Error& err) {
        fail(err.code(), std::string(err.what()) + " [" + to_string(dir) + " branch " + std::to_string(branch) + " of " + c.id + "]");
    }
}

int separatrix_sign(const Scene& scene, const Separatrix& s) {
    if (!s.origin || s.terminus.kind != TerminusKind::Critical) return 0;
    const auto& q = scene.critical(*s.origin);
    const auto& end = scene.critical(s.terminus.critical);
    if (q.index != 1) return 0;
    if (s.direction == Direction::Descending) return end.index == 0 ? s.branch : 0;
    if (end.index != 2) return 0;
    const Vec3 arrive = -s.branch * q.vectors[1];
    return end.orientation * (scene.model().det(arrive, q.vectors[0], q.position) > 0 ? 1 : -1);
}

std::vector<Separatrix> extract_separatrices(const Scene& scene, std::optional<double> span) {
    std::vector<Separatrix> out;
    for (auto i : scene.of_index(1))
        for (auto dir : {Direction::Descending, Direction::Ascending})
            for (int b : {1, -1}) out.push_back(trace_branch(scene, i, dir, b, span));
    return out;
}

TransversalityDiagnosis check_almost_transversality(const Scene& scene, const std::vector<Separatrix>& separatrices) {
    TransversalityDiagnosis d;
    for (const auto& s : separatrices) {
        if (!s.origin || s.terminus.kind != TerminusKind::Critical) continue;
        if (scene.critical(s.terminus.critical).index != 1) continue;
        std::string upper = scene.critical(*s.origin).id, lower = scene.critical(s.terminus.critical).id;
        if (s.direction == Direction::Ascending) std::swap(upper, lower);
        const auto pair = std::make_pair(upper, lower);
        if (std::find(d.connections.begin(), d.connections.end(), pair) == d.connections.end()) d.connections.push_back(pair);
        d.pass = false;
    }
    return d;
}

TransversalityDiagnosis check_almost_transversality(const Scene& scene) {
    const std::optional<double> span = scene.kind() == SceneKind::CircleValued ? std::optional<double>(2.0) : std::nullopt;
    return check_almost_transversality(scene, extract_separatrices(scene, span));
}

} // namespace morsekit::flow
