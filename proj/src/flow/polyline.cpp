#include "morsekit/flow/polyline.hpp"

#include <algorithm>
#include <cmath>

namespace morsekit::flow {

namespace {

constexpr double kSnap = 1e-10;

struct Box {
    double x0, y0, x1, y1;
};

Box box_of(const Polyline& p) {
    Box b{1e300, 1e300, -1e300, -1e300};
    for (const auto& v : p) {
        b.x0 = std::min(b.x0, v.x());
        b.y0 = std::min(b.y0, v.y());
        b.x1 = std::max(b.x1, v.x());
        b.y1 = std::max(b.y1, v.y());
    }
    return b;
}

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Vec2 xy(const Vec3& v) { return Vec2(v.x(), v.y()); }

} // namespace

Polyline disc_curve(const Scene& scene, std::size_t saddle, Direction dir, std::optional<double> span, const Shift& at) {
    const auto minus = trace_branch(scene, saddle, dir, -1, span, at);
    const auto plus = trace_branch(scene, saddle, dir, 1, span, at);
    Polyline out(minus.samples.rbegin(), minus.samples.rend());
    out.push_back(scene.lift(saddle, at));
    out.insert(out.end(), plus.samples.begin(), plus.samples.end());
    return out;
}

std::vector<Crossing> crossings(const Polyline& a, const Polyline& b, bool periodic, double min_sine) {
    std::vector<Crossing> out;
    if (a.size() < 2 || b.size() < 2) return out;
    const Box ba = box_of(a), bb = box_of(b);
    int kx0 = 0, kx1 = 0, ky0 = 0, ky1 = 0;
    if (periodic) {
        kx0 = static_cast<int>(std::floor(ba.x0 - bb.x1)) - 1;
        kx1 = static_cast<int>(std::ceil(ba.x1 - bb.x0)) + 1;
        ky0 = static_cast<int>(std::floor(ba.y0 - bb.y1)) - 1;
        ky1 = static_cast<int>(std::ceil(ba.y1 - bb.y0)) + 1;
    }
    for (int kx = kx0; kx <= kx1; ++kx)
        for (int ky = ky0; ky <= ky1; ++ky) {
            const Vec2 k(kx, ky);
            if (bb.x0 + kx > ba.x1 || bb.x1 + kx < ba.x0 || bb.y0 + ky > ba.y1 || bb.y1 + ky < ba.y0) continue;
            for (std::size_t j = 0; j + 1 < b.size(); ++j) {
                const Vec2 q0 = xy(b[j]) + k, q1 = xy(b[j + 1]) + k;
                const Vec2 db = q1 - q0;
                const double lb = db.norm();
                if (lb == 0) continue;
                for (std::size_t i = 0; i + 1 < a.size(); ++i) {
                    const Vec2 p0 = xy(a[i]), p1 = xy(a[i + 1]);
                    if (std::max(p0.x(), p1.x()) < std::min(q0.x(), q1.x()) - kSnap || std::min(p0.x(), p1.x()) > std::max(q0.x(), q1.x()) + kSnap ||
                        std::max(p0.y(), p1.y()) < std::min(q0.y(), q1.y()) - kSnap || std::min(p0.y(), p1.y()) > std::max(q0.y(), q1.y()) + kSnap)
                        continue;
                    const Vec2 da = p1 - p0;
                    const double la = da.norm();
                    if (la == 0) continue;
                    const double den = cross2(da, db);
                    const Vec2 w = q0 - p0;
                    if (std::abs(den) <= 1e-14 * la * lb) {
                        if (std::abs(cross2(w, da)) <= 1e-14 * la * w.norm() + 1e-300) {
                            const double t0 = w.dot(da) / (la * la), t1 = (q1 - p0).dot(da) / (la * la);
                            if (std::max(t0, t1) > kSnap && std::min(t0, t1) < 1 - kSnap)
                                fail(ErrorCode::TransversalityFailure, "polylines overlap along a segment");
                        }
                        continue;
                    }
                    double s = cross2(w, db) / den, u = cross2(w, da) / den;
                    if (std::abs(s) < kSnap) s = 0;
                    if (std::abs(u) < kSnap) u = 0;
                    if (s < 0 || u < 0 || s >= 1 - kSnap || u >= 1 - kSnap) continue;
                    const double sine = std::abs(den) / (la * lb);
                    if (sine < min_sine) fail(ErrorCode::TransversalityFailure, "polylines cross at a grazing angle");
                    Crossing c;
                    const Vec2 pt = p0 + s * da;
                    c.point = Vec3(pt.x(), pt.y(), 0);
                    c.translate = {kx, ky};
                    c.sign = den > 0 ? 1 : -1;
                    c.sine = sine;
                    out.push_back(c);
                }
            }
        }
    return out;
}

double distance_to_polyline(const Vec3& x, const Polyline& b, bool periodic) {
    double best = std::numeric_limits<double>::infinity();
    const Box bb = box_of(b);
    int kx0 = 0, kx1 = 0, ky0 = 0, ky1 = 0;
    if (periodic) {
        kx0 = static_cast<int>(std::floor(x.x() - bb.x1)) - 1;
        kx1 = static_cast<int>(std::ceil(x.x() - bb.x0)) + 1;
        ky0 = static_cast<int>(std::floor(x.y() - bb.y1)) - 1;
        ky1 = static_cast<int>(std::ceil(x.y() - bb.y0)) + 1;
    }
    const Vec2 p = xy(x);
    for (int kx = kx0; kx <= kx1; ++kx)
        for (int ky = ky0; ky <= ky1; ++ky) {
            const Vec2 k(kx, ky);
            for (std::size_t j = 0; j + 1 < b.size(); ++j) {
                const Vec2 q0 = xy(b[j]) + k, q1 = xy(b[j + 1]) + k;
                const Vec2 d = q1 - q0;
                const double len2 = d.squaredNorm();
                const double t = len2 > 0 ? std::clamp((p - q0).dot(d) / len2, 0.0, 1.0) : 0.0;
                best = std::min(best, (p - q0 - t * d).norm());
            }
        }
    return best;
}

} // namespace morsekit::flow
