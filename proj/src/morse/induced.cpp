#include "morsekit/morse/induced.hpp"

#include "morsekit/morse/morse_complex.hpp"

#include <algorithm>
#include <cmath>

namespace morsekit::morse {

using flow::Direction;
using flow::Scene;
using flow::Vec2;
using flow::Vec3;

Vec3 TorusMap::apply(const Vec3& x) const {
    const Vec2 y = linear * Vec2(x.x(), x.y()) + offset;
    return Vec3(y.x(), y.y(), 0);
}

int TorusMap::degree() const { return static_cast<int>(std::lround(linear.determinant())); }

std::vector<Vec3> TorusMap::preimages(const Vec3& y, const Vec2& window) const {
    const flow::Mat2 inv = linear.inverse();
    // k = M x + c - y over the unit square
    double lo[2] = {1e300, 1e300}, hi[2] = {-1e300, -1e300};
    for (int cx = 0; cx < 2; ++cx)
        for (int cy = 0; cy < 2; ++cy) {
            const Vec2 k = linear * (window + Vec2(cx, cy)) + offset - Vec2(y.x(), y.y());
            for (int i = 0; i < 2; ++i) {
                lo[i] = std::min(lo[i], k(i));
                hi[i] = std::max(hi[i], k(i));
            }
        }
    std::vector<Vec3> out;
    for (int kx = static_cast<int>(std::floor(lo[0])) - 1; kx <= static_cast<int>(std::ceil(hi[0])) + 1; ++kx)
        for (int ky = static_cast<int>(std::floor(lo[1])) - 1; ky <= static_cast<int>(std::ceil(hi[1])) + 1; ++ky) {
            const Vec2 x = inv * (Vec2(y.x() + kx, y.y() + ky) - offset);
            Vec2 r = x - window;
            r -= Vec2(std::floor(r.x()), std::floor(r.y()));
            for (int i = 0; i < 2; ++i)
                if (r(i) >= 1) r(i) = 0;
            const Vec2 z = window + r;
            bool seen = false;
            for (const auto& o : out) {
                Vec2 d = Vec2(o.x(), o.y()) - z;
                d -= Vec2(std::round(d.x()), std::round(d.y()));
                if (d.norm() < 1e-9) seen = true;
            }
            if (!seen) out.emplace_back(z.x(), z.y(), 0);
        }
    return out;
}

TorusMap TorusMap::after(const TorusMap& g) const { return {linear * g.linear, linear * g.offset + offset}; }

TorusMap TorusMap::from_json(const nlohmann::json& j) {
    TorusMap m;
    try {
        const auto l = j.at("linear").get<std::vector<std::vector<double>>>();
        if (l.size() != 2 || l[0].size() != 2 || l[1].size() != 2) fail(ErrorCode::Config, "map 'linear' must be 2x2");
        m.linear << l[0][0], l[0][1], l[1][0], l[1][1];
        if (j.contains("offset")) {
            const auto c = j.at("offset").get<std::vector<double>>();
            if (c.size() != 2) fail(ErrorCode::Config, "map 'offset' must have 2 entries");
            m.offset = Vec2(c[0], c[1]);
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Config, std::string("bad map: ") + e.what());
    }
    for (int i = 0; i < 4; ++i)
        if (m.linear(i) != std::round(m.linear(i))) fail(ErrorCode::Config, "map 'linear' must be integral");
    if (m.degree() == 0) fail(ErrorCode::Config, "map must have nonzero degree");
    return m;
}

nlohmann::json TorusMap::to_json() const {
    return {{"linear", {{linear(0, 0), linear(0, 1)}, {linear(1, 0), linear(1, 1)}}}, {"offset", {offset.x(), offset.y()}}};
}

namespace {

constexpr double kClearance = 1e-7;

std::size_t position_in(const std::vector<std::string>& basis, const std::string& id) {
    return static_cast<std::size_t>(std::find(basis.begin(), basis.end(), id) - basis.begin());
}

// Critical point of `scene` reached from x by the (signed) flow.
std::size_t flow_to(const Scene& scene, const Vec3& x, Direction dir, int want_index) {
    const double rho = scene.options().trap_radius;
    std::optional<std::size_t> origin;
    flow::Shift origin_shift{0, 0};
    if (auto hit = scene.locate(x, rho)) {
        const auto& c = scene.critical(hit->first);
        if (c.index == want_index) return hit->first;
        if ((scene.lift(hit->first, hit->second) - x).norm() < kClearance)
            fail(ErrorCode::TransversalityFailure, "image point lies on critical point " + c.id);
        origin = hit->first;
        origin_shift = hit->second;
    }
    flow::StopRule stop;
    const auto s = flow::trace(scene, x, dir, stop, origin, origin_shift);
    const auto& end = scene.critical(s.terminus.critical);
    if (end.index != want_index) fail(ErrorCode::TransversalityFailure, "image point flows into " + end.id + " instead of an extremum");
    return s.terminus.critical;
}

} // namespace

homalg::IntChainMap induced_map(const TorusMap& a, const Scene& source, const Scene& target) {
    for (const Scene* s : {&source, &target})
        if (!s->model().periodic() || s->kind() != flow::SceneKind::RealValued)
            fail(ErrorCode::InvalidArgument, "induced maps need real-valued flat torus scenes");
    const auto src = build_morse_complex(source);
    const auto tgt = build_morse_complex(target);
    std::vector<homalg::IntMatrix> comps;
    for (int k = 0; k <= 2; ++k) comps.emplace_back(tgt.rank(k), src.rank(k));

    // degree 0
    for (auto p : source.of_index(0)) {
        const auto q = flow_to(target, a.apply(source.critical(p).position), Direction::Descending, 0);
        comps[0](position_in(tgt.basis(0), target.critical(q).id), position_in(src.basis(0), source.critical(p).id)) += 1;
    }

    // degree 2
    const int det_sign = a.degree() > 0 ? 1 : -1;
    for (auto q : target.of_index(2)) {
        const auto& cq = target.critical(q);
        for (const auto& x : a.preimages(cq.position)) {
            const auto p = flow_to(source, x, Direction::Ascending, 2);
            const auto& cp = source.critical(p);
            comps[2](position_in(tgt.basis(2), cq.id), position_in(src.basis(2), cp.id)) += cp.orientation * det_sign * cq.orientation;
        }
    }

    // degree 1
    std::vector<flow::Polyline> ascending;
    for (auto q : target.of_index(1)) ascending.push_back(flow::disc_curve(target, q, Direction::Ascending));
    for (auto p : source.of_index(1)) {
        flow::Polyline image;
        for (const auto& x : flow::disc_curve(source, p, Direction::Descending)) image.push_back(a.apply(x));
        for (auto m : target.of_index(2))
            if (flow::distance_to_polyline(target.critical(m).position, image, true) < kClearance)
                fail(ErrorCode::TransversalityFailure, "image of D(" + source.critical(p).id + ") meets maximum " + target.critical(m).id);
        const auto qs = target.of_index(1);
        for (std::size_t j = 0; j < qs.size(); ++j) {
            const auto& cq = target.critical(qs[j]);
            const int orient = target.model().det(cq.vectors[0], cq.vectors[1], cq.position) > 0 ? 1 : -1;
            for (const auto& c : flow::crossings(image, ascending[j], true))
                comps[1](position_in(tgt.basis(1), cq.id), position_in(src.basis(1), source.critical(p).id)) += orient * c.sign;
        }
    }
    for (auto p : source.of_index(0))
        for (std::size_t j = 0; j < ascending.size(); ++j)
            if (flow::distance_to_polyline(a.apply(source.critical(p).position), ascending[j], true) < kClearance)
                fail(ErrorCode::TransversalityFailure, "image of " + source.critical(p).id + " lies on an ascending disc");

    homalg::IntChainMap f(src, tgt, comps);
    f.check();
    return f;
}

} // namespace morsekit::morse
