#include "morsekit/zeta/zeta.hpp"

#include "morsekit/io/json.hpp"
#include "morsekit/novikov/novikov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace morsekit::zeta {

using flow::Direction;
using flow::Vec2;
using flow::Vec3;

namespace {

constexpr double kPieceMargin = 1e-8;
constexpr double kDiffStep = 1e-6;
constexpr double kDegenerate = 1e-6;
constexpr double kMaxJump = 0.25;
constexpr std::size_t kMaxSamples = 1u << 20;

double level_scan_halfwidth(const flow::Scene& s) {
    double b = 0;
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j) {
            const Vec3 p(i / 64.0, j / 64.0, 0);
            b = std::max(b, std::abs(s.f(p) - p.x()));
        }
    return b + 0.25;
}

using Int2 = std::array<std::array<long long, 2>, 2>;

Int2 to_int(const flow::Mat2& m) {
    return {{{std::llround(m(0, 0)), std::llround(m(0, 1))}, {std::llround(m(1, 0)), std::llround(m(1, 1))}}};
}

Int2 mul(const Int2& a, const Int2& b) {
    Int2 c{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return c;
}

Int2 power(const Int2& a, int n) {
    Int2 r{{{1, 0}, {0, 1}}};
    for (int i = 0; i < n; ++i) r = mul(r, a);
    return r;
}

std::string where(const std::vector<double>& x) {
    std::ostringstream os;
    os.precision(12);
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    return os.str();
}

double wrap(double y) { return y - std::floor(y); }

struct Piece {
    double a, b;
};

// ---- one-dimensional levels -------------------------------------------------

struct Sample {
    double y, d;
};

std::vector<FixedPoint> curve_fixed_points(const ReturnMap& rm, int n, const std::vector<Piece>& pieces) {
    auto disp = [&](double y) { return rm.iterate(y, n) - y; };
    std::vector<FixedPoint> out;
    std::size_t total = 0;
    for (const auto& p : pieces) {
        const int m0 = std::max(8, static_cast<int>(std::ceil((p.b - p.a) * rm.resolution())));
        std::vector<Sample> s;
        for (int i = 0; i <= m0; ++i) {
            const double y = p.a + (p.b - p.a) * i / m0;
            s.push_back({y, disp(y)});
        }
        // refine until consecutive displacements differ by less than kMaxJump
        for (std::size_t i = 0; i + 1 < s.size();) {
            if (std::abs(s[i + 1].d - s[i].d) <= kMaxJump) {
                ++i;
                continue;
            }
            if (s[i + 1].y - s[i].y < 1e-12 || ++total > kMaxSamples)
                fail(ErrorCode::ResolutionTooCoarse, "displacement of Phi^" + std::to_string(n) + " jumps near y = " + std::to_string(s[i].y));
            const double mid = 0.5 * (s[i].y + s[i + 1].y);
            s.insert(s.begin() + static_cast<std::ptrdiff_t>(i) + 1, Sample{mid, disp(mid)});
        }
        total += s.size();
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            const auto& lo = s[i];
            const auto& hi = s[i + 1];
            const bool up = hi.d > lo.d;
            // roots in (lo.y, hi.y]
            const double m = up ? std::floor(hi.d) : std::ceil(hi.d);
            if (!(up ? (m > lo.d && m <= hi.d) : (m < lo.d && m >= hi.d))) continue;
            double a = lo.y, b = hi.y;
            double root = b;
            if (hi.d != m) {
                for (int it = 0; it < 60 && b - a > 1e-13; ++it) {
                    const double c = 0.5 * (a + b);
                    const double g = disp(c) - m;
                    if (g == 0) {
                        a = b = c;
                        break;
                    }
                    if ((g > 0) == up) b = c;
                    else a = c;
                }
                root = 0.5 * (a + b);
            }
            const double h = std::min({kDiffStep, root - p.a, p.b - root});
            const double deriv = h > 0 ? 1 + (disp(root + h) - disp(root - h)) / (2 * h) : 1 + (hi.d - lo.d) / (hi.y - lo.y);
            if (std::abs(deriv - 1) < kDegenerate)
                fail(ErrorCode::DegenerateFixedPoint, "Phi^" + std::to_string(n) + " has a degenerate fixed point at y = " + std::to_string(wrap(root)));
            if ((deriv > 1) != up)
                fail(ErrorCode::ResolutionTooCoarse, "several fixed points of Phi^" + std::to_string(n) + " near y = " + std::to_string(wrap(root)));
            out.push_back({n, {wrap(root)}, deriv > 1 ? -1 : 1, deriv});
        }
    }
    return out;
}

// ---- torus fibers --------------------------------------------------------

flow::Mat2 jacobian(const ReturnMap& rm, const Vec2& x, int n) {
    flow::Mat2 j;
    for (int c = 0; c < 2; ++c) {
        Vec2 e = Vec2::Zero();
        e(c) = kDiffStep;
        j.col(c) = (rm.iterate(Vec2(x + e), n) - rm.iterate(Vec2(x - e), n)) / (2 * kDiffStep);
    }
    return j;
}

std::vector<FixedPoint> torus_fixed_points(const ReturnMap& rm, int n) {
    const auto& mt = rm.mapping_torus();
    Int2 m = power(to_int(mt.monodromy), n);
    m[0][0] -= 1;
    m[1][1] -= 1;
    long long det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (det == 0) fail(ErrorCode::DegenerateFixedPoint, "monodromy power " + std::to_string(n) + " has eigenvalue 1; fixed points are not isolated");
    Int2 adj{{{m[1][1], -m[0][1]}, {-m[1][0], m[0][0]}}};
    if (det < 0) {
        det = -det;
        for (auto& r : adj)
            for (auto& v : r) v = -v;
    }
    long long kx0 = 0, kx1 = 0, ky0 = 0, ky1 = 0;
    for (int cx = 0; cx < 2; ++cx)
        for (int cy = 0; cy < 2; ++cy) {
            const long long x = m[0][0] * cx + m[0][1] * cy, y = m[1][0] * cx + m[1][1] * cy;
            kx0 = std::min(kx0, x), kx1 = std::max(kx1, x), ky0 = std::min(ky0, y), ky1 = std::max(ky1, y);
        }
    std::vector<FixedPoint> out;
    for (long long kx = kx0; kx <= kx1; ++kx)
        for (long long ky = ky0; ky <= ky1; ++ky) {
            const long long nx = adj[0][0] * kx + adj[0][1] * ky, ny = adj[1][0] * kx + adj[1][1] * ky;
            if (nx < 0 || nx >= det || ny < 0 || ny >= det) continue;
            const Vec2 k(static_cast<double>(kx), static_cast<double>(ky));
            Vec2 x(static_cast<double>(nx) / det, static_cast<double>(ny) / det);
            flow::Mat2 j;
            for (int it = 0;; ++it) {
                const Vec2 r = rm.iterate(x, n) - x - k;
                j = jacobian(rm, x, n);
                if (r.norm() < 1e-10) break;
                if (it == 40) fail(ErrorCode::ResolutionTooCoarse, "Newton did not converge for a fixed point of Phi^" + std::to_string(n));
                x -= (j - flow::Mat2::Identity()).inverse() * r;
            }
            const double d = (flow::Mat2::Identity() - j).determinant();
            if (std::abs(d) < kDegenerate) fail(ErrorCode::DegenerateFixedPoint, "degenerate fixed point of Phi^" + std::to_string(n) + " at " + where({x.x(), x.y()}));
            out.push_back({n, {wrap(x.x()), wrap(x.y())}, d > 0 ? 1 : -1, d});
        }
    auto key = [](const FixedPoint& f) { return std::make_pair(std::llround(f.location[0] * 1e7) % 10000000, std::llround(f.location[1] * 1e7) % 10000000); };
    std::vector<std::pair<long long, long long>> keys;
    for (const auto& f : out) keys.push_back(key(f));
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
        fail(ErrorCode::ResolutionTooCoarse, "two lattice classes converged to one fixed point of Phi^" + std::to_string(n));
    return out;
}

} // namespace

ReturnMap ReturnMap::of_scene(const flow::Scene& scene, double lambda, int resolution) {
    if (scene.kind() != flow::SceneKind::CircleValued) fail(ErrorCode::InvalidArgument, "return maps need a circle-valued scene");
    novikov::require_regular(scene, lambda);
    if (!scene.of_index(0).empty()) fail(ErrorCode::InvalidArgument, "return maps of scenes with minima are not supported");
    if (resolution < 8) fail(ErrorCode::InvalidArgument, "resolution must be at least 8");
    ReturnMap rm;
    rm.scene_ = scene;
    rm.lambda_ = lambda;
    rm.resolution_ = resolution;
    // V_lambda must be a single graph over y
    const double w = level_scan_halfwidth(scene);
    for (int i = 0; i < resolution; ++i) {
        const double y = static_cast<double>(i) / resolution;
        int roots = 0;
        double prev = scene.f(Vec3(lambda - w, y, 0)) - lambda;
        for (int k = 1; k <= 400; ++k) {
            const double cur = scene.f(Vec3(lambda - w + 2 * w * k / 400, y, 0)) - lambda;
            if ((prev < 0) != (cur < 0)) ++roots;
            prev = cur;
        }
        if (roots != 1) fail(ErrorCode::InvalidArgument, "level " + std::to_string(lambda) + " is not a single graph over y");
    }
    return rm;
}

ReturnMap ReturnMap::of_mapping_torus(const MappingTorus& m, double lambda, int resolution) {
    if (resolution < 8) fail(ErrorCode::InvalidArgument, "resolution must be at least 8");
    ReturnMap rm;
    rm.torus_ = m;
    rm.lambda_ = lambda;
    rm.resolution_ = resolution;
    return rm;
}

int ReturnMap::dimension() const { return scene_ ? 1 : torus_->fiber_dimension(); }

Vec3 ReturnMap::level_point(double y) const {
    if (!scene_) fail(ErrorCode::InvalidArgument, "mapping tori have no scene level");
    const double w = level_scan_halfwidth(*scene_);
    double a = lambda_ - w, b = lambda_ + w;
    auto g = [&](double x) { return scene_->f(Vec3(x, y, 0)) - lambda_; };
    if (g(a) >= 0 || g(b) <= 0) fail(ErrorCode::InvalidArgument, "level is not bracketed");
    for (int i = 0; i < 80 && b - a > 1e-15; ++i) {
        const double c = 0.5 * (a + b);
        (g(c) < 0 ? a : b) = c;
    }
    return Vec3(0.5 * (a + b), y, 0);
}

std::vector<double> ReturnMap::iterates(double y, int n) const {
    std::vector<double> out;
    if (torus_) {
        if (torus_->kind != MappingTorus::Kind::Circle) fail(ErrorCode::InvalidArgument, "torus fibers are two-dimensional");
        for (int j = 0; j < n; ++j) out.push_back(y = torus_->return_map(y, lambda_));
        return out;
    }
    flow::StopRule stop;
    stop.trap = false;
    for (int j = 1; j <= n; ++j) stop.levels.push_back(lambda_ - j);
    const auto s = flow::trace(*scene_, level_point(y), Direction::Descending, stop);
    if (s.crossings.size() != static_cast<std::size_t>(n)) fail(ErrorCode::ResolutionTooCoarse, "descent from y = " + std::to_string(y) + " stalled");
    for (const auto& c : s.crossings) out.push_back(c.y());
    return out;
}

Vec2 ReturnMap::iterate(const Vec2& x, int n) const {
    if (!torus_ || torus_->kind != MappingTorus::Kind::Linear) fail(ErrorCode::InvalidArgument, "not a torus fiber");
    Vec2 y = x;
    for (int j = 0; j < n; ++j) y = torus_->return_map(y, lambda_);
    return y;
}

std::vector<double> ReturnMap::domain_boundary(int n) const {
    std::vector<double> out;
    if (!scene_) return out;
    const auto& s = *scene_;
    for (auto q : s.of_index(1)) {
        const flow::Shift at{novikov::basis_shift(s, q, lambda_), 0};
        for (int b : {-1, 1}) {
            flow::StopRule stop;
            for (int j = 0; j < n; ++j) stop.levels.push_back(lambda_ + j);
            const Vec3 start = s.lift(q, at) + s.options().seed_offset * b * s.critical(q).vectors[1];
            const auto t = flow::trace(s, start, Direction::Ascending, stop, q, at);
            for (const auto& c : t.crossings) out.push_back(wrap(c.y()));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<FixedPoint> fixed_points(const ReturnMap& rm, int n) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "iterate must be positive");
    if (rm.dimension() == 2) return torus_fixed_points(rm, n);
    std::vector<Piece> pieces;
    const auto cuts = rm.domain_boundary(n);
    if (cuts.empty()) {
        pieces.push_back({0, 1});
    } else {
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            const double a = cuts[i] + kPieceMargin;
            const double b = (i + 1 < cuts.size() ? cuts[i + 1] : cuts[0] + 1) - kPieceMargin;
            if (b > a) pieces.push_back({a, b});
        }
    }
    return curve_fixed_points(rm, n, pieces);
}

std::vector<long long> lefschetz_counts(const ReturnMap& rm, int order, std::vector<FixedPoint>* found) {
    std::vector<long long> counts;
    for (int n = 1; n <= order; ++n) {
        const auto fp = fixed_points(rm, n);
        long long l = 0;
        for (const auto& f : fp) l += f.index;
        counts.push_back(l);
        if (found) found->insert(found->end(), fp.begin(), fp.end());
    }
    return counts;
}

rings::WittUnit zeta_series(const std::vector<long long>& counts, int order) {
    if (static_cast<int>(counts.size()) < order) fail(ErrorCode::InvalidArgument, "not enough Lefschetz numbers for the requested order");
    rings::TruncatedSeries<rings::Rational> a(order + 1);
    for (int n = 1; n <= order; ++n) a[n] = rings::Rational(counts[static_cast<std::size_t>(n - 1)]) / n;
    return rings::series_exp(a);
}

std::vector<long long> homological_lefschetz(const MappingTorus& m, int order) {
    const auto h = m.homology_action();
    std::vector<long long> out;
    for (int n = 1; n <= order; ++n) {
        long long l = 0;
        for (std::size_t k = 0; k < h.size(); ++k) {
            const auto p = power(to_int(h[k]), n);
            l += (k % 2 == 0 ? 1 : -1) * (p[0][0] + p[1][1]);
        }
        out.push_back(l);
    }
    return out;
}

ZetaReport zeta_report(const ReturnMap& rm, int order) {
    ZetaReport r;
    r.lambda = rm.lambda();
    r.order = order;
    r.counts = lefschetz_counts(rm, order, &r.fixed_points);
    r.zeta = zeta_series(r.counts, order);
    return r;
}

nlohmann::json to_json(const ZetaReport& r, bool with_points) {
    nlohmann::json j = {{"lambda", r.lambda}, {"order", r.order}, {"lefschetz", r.counts}, {"zeta", io::witt_json(r.zeta)}};
    std::vector<int> found(static_cast<std::size_t>(r.order), 0);
    for (const auto& f : r.fixed_points) ++found[static_cast<std::size_t>(f.n - 1)];
    j["fixed_point_counts"] = found;
    if (with_points) {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& f : r.fixed_points) pts.push_back({{"n", f.n}, {"location", f.location}, {"index", f.index}});
        j["fixed_points"] = pts;
    }
    return j;
}

std::string fixed_points_csv(const ZetaReport& r) {
    std::ostringstream os;
    os.precision(12);
    os << "n,x,y,index,derivative\n";
    for (const auto& f : r.fixed_points) {
        os << f.n << "," << f.location[0] << ",";
        if (f.location.size() > 1) os << f.location[1];
        os << "," << f.index << "," << f.derivative << "\n";
    }
    return os.str();
}

} // namespace morsekit::zeta
