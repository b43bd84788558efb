#include "morsekit/flow/scene.hpp"

#include <algorithm>
#include <cmath>

namespace morsekit::flow {

std::string to_string(SceneKind k) { return k == SceneKind::RealValued ? "real_valued" : "circle_valued"; }

std::vector<Vec3> SurfaceModel::sample_points(int resolution) const {
    const auto [lo, hi] = bounds();
    std::vector<Vec3> out;
    for (int i = 0; i < resolution; ++i)
        for (int j = 0; j < resolution; ++j) {
            const double u = (i + 0.5) / resolution, w = (j + 0.5) / resolution;
            out.push_back(project(Vec3(lo.x() + u * (hi.x() - lo.x()), lo.y() + w * (hi.y() - lo.y()), 0)));
        }
    return out;
}

Vec3 SurfaceModel::project(const Vec3& x) const {
    Vec3 p = x;
    for (int it = 0; it < 8; ++it) {
        const double gv = g(p);
        if (std::abs(gv) < 1e-15) break;
        const Vec3 n = grad_g(p);
        const double nn = n.squaredNorm();
        if (nn == 0) fail(ErrorCode::EvaluationFailure, "degenerate constraint gradient during projection");
        p -= gv / nn * n;
    }
    return p;
}

Vec3 SurfaceModel::normal(const Vec3& x) const {
    const Vec3 n = grad_g(x);
    const double len = n.norm();
    if (len == 0) fail(ErrorCode::EvaluationFailure, "surface normal vanishes");
    return n / len;
}

Vec3 SurfaceModel::tangent_gradient(const Vec3& x) const {
    const Vec3 n = normal(x);
    const Vec3 gf = grad_f(x);
    return gf - n.dot(gf) * n;
}

std::pair<Vec3, Vec3> SurfaceModel::frame(const Vec3& x) const {
    const Vec3 n = normal(x);
    Vec3 ref = Vec3::UnitX();
    if (std::abs(n.x()) > 0.9) ref = Vec3::UnitY();
    Vec3 t1 = ref - n.dot(ref) * n;
    t1.normalize();
    return {t1, n.cross(t1)};
}

Mat2 SurfaceModel::intrinsic_hessian(const Vec3& x) const {
    const Vec3 gg = grad_g(x);
    const double mu = grad_f(x).dot(gg) / gg.squaredNorm();
    const Mat3 h = hess_f(x) - mu * hess_g(x);
    const auto [t1, t2] = frame(x);
    Eigen::Matrix<double, 3, 2> t;
    t.col(0) = t1;
    t.col(1) = t2;
    return t.transpose() * h * t;
}

double SurfaceModel::det(const Vec3& a, const Vec3& b, const Vec3& x) const { return normal(x).dot(a.cross(b)); }

nlohmann::json to_json(const NumericOptions& o) {
    return {{"trap_radius", o.trap_radius},   {"seed_offset", o.seed_offset}, {"tolerance", o.tolerance},
            {"max_arclength", o.max_arclength}, {"max_step", o.max_step},     {"min_step", o.min_step},
            {"zero_tolerance", o.zero_tolerance}, {"merge_radius", o.merge_radius}};
}

NumericOptions numeric_options_from_json(const nlohmann::json& j, NumericOptions o) {
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number()) fail(ErrorCode::Config, "override '" + key + "' must be a number");
        const double x = value.get<double>();
        if (key == "trap_radius") o.trap_radius = x;
        else if (key == "seed_offset") o.seed_offset = x;
        else if (key == "tolerance") o.tolerance = x;
        else if (key == "max_arclength") o.max_arclength = x;
        else if (key == "max_step") o.max_step = x;
        else if (key == "min_step") o.min_step = x;
        else if (key == "zero_tolerance") o.zero_tolerance = x;
        else if (key == "merge_radius") o.merge_radius = x;
        else fail(ErrorCode::Config, "unknown numerical override '" + key + "'");
    }
    return o;
}

Scene::Scene(std::shared_ptr<const SurfaceModel> model, std::shared_ptr<const VectorField> field, std::vector<CriticalPoint> critical,
             NumericOptions options, nlohmann::json params)
    : model_(std::move(model)), field_(std::move(field)), critical_(std::move(critical)), options_(options), params_(std::move(params)) {}

std::optional<std::size_t> Scene::find(const std::string& id) const {
    for (std::size_t i = 0; i < critical_.size(); ++i)
        if (critical_[i].id == id) return i;
    return std::nullopt;
}

Scene Scene::with_field(std::shared_ptr<const VectorField> field) const { return Scene(model_, std::move(field), critical_, options_, params_); }

Scene Scene::with_options(NumericOptions options) const { return Scene(model_, field_, critical_, options, params_); }

Vec3 Scene::lift(std::size_t i, const Shift& s) const { return critical_.at(i).position + Vec3(s[0], s[1], 0); }

std::optional<std::pair<std::size_t, Shift>> Scene::locate(const Vec3& x, double r) const {
    for (std::size_t i = 0; i < critical_.size(); ++i) {
        Vec3 d = x - critical_[i].position;
        Shift s{0, 0};
        if (model_->periodic()) {
            s = {static_cast<int>(std::lround(d.x())), static_cast<int>(std::lround(d.y()))};
            d -= Vec3(s[0], s[1], 0);
        }
        if (d.norm() < r) return std::make_pair(i, s);
    }
    return std::nullopt;
}

std::vector<std::size_t> Scene::of_index(int k) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < critical_.size(); ++i)
        if (critical_[i].index == k) out.push_back(i);
    return out;
}

Mat2 field_jacobian(const SurfaceModel& m, const VectorField& v, const Vec3& x, double h) {
    const auto [t1, t2] = m.frame(x);
    Mat2 j;
    const std::array<Vec3, 2> dirs{t1, t2};
    for (int c = 0; c < 2; ++c) {
        const Vec3 fp = v.at(m.project(x + h * dirs[static_cast<std::size_t>(c)]));
        const Vec3 fm = v.at(m.project(x - h * dirs[static_cast<std::size_t>(c)]));
        const Vec3 d = (fp - fm) / (2 * h);
        j(0, c) = d.dot(t1);
        j(1, c) = d.dot(t2);
    }
    return j;
}

namespace {

// Newton on grad f = mu grad g, g = 0.
std::optional<Vec3> newton_critical(const SurfaceModel& m, Vec3 p) {
    p = m.project(p);
    double mu = m.grad_f(p).dot(m.grad_g(p)) / m.grad_g(p).squaredNorm();
    for (int it = 0; it < 60; ++it) {
        const Vec3 gf = m.grad_f(p), gg = m.grad_g(p);
        Eigen::Vector4d r;
        r.head<3>() = gf - mu * gg;
        r(3) = m.g(p);
        if (r.norm() < 1e-13) return p;
        Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
        j.topLeftCorner<3, 3>() = m.hess_f(p) - mu * m.hess_g(p);
        j.block<3, 1>(0, 3) = -gg;
        j.block<1, 3>(3, 0) = gg.transpose();
        const Eigen::Vector4d step = j.fullPivLu().solve(-r);
        if (!step.allFinite()) return std::nullopt;
        p += step.head<3>();
        mu += step(3);
        if (step.norm() < 1e-15) break;
    }
    const Vec3 gf = m.grad_f(p), gg = m.grad_g(p);
    if ((gf - mu * gg).norm() < 1e-10 && std::abs(m.g(p)) < 1e-10) return p;
    return std::nullopt;
}

// First clearly nonzero component positive.
Vec3 normalize_sign(Vec3 v) {
    v.normalize();
    for (int i = 0; i < 3; ++i) {
        if (std::abs(v(i)) > 1e-8) {
            if (v(i) < 0) v = -v;
            break;
        }
    }
    return v;
}

} // namespace

std::vector<CriticalPoint> find_critical_points(const SurfaceModel& m, const NumericOptions& opt) {
    std::vector<Vec3> found;
    for (const auto& seed : m.critical_seeds()) {
        std::optional<Vec3> p;
        try {
            p = newton_critical(m, seed);
        } catch (const Error&) {
            continue;
        }
        if (!p) continue;
        if (m.periodic()) {
            p->x() -= std::floor(p->x() + 1e-12);
            p->y() -= std::floor(p->y() + 1e-12);
        }
        bool dup = false;
        for (const auto& q : found) {
            Vec3 d = *p - q;
            if (m.periodic()) {
                d.x() -= std::round(d.x());
                d.y() -= std::round(d.y());
            }
            if (d.norm() < opt.merge_radius) dup = true;
        }
        if (!dup) found.push_back(*p);
    }

    GradientField grad(std::shared_ptr<const SurfaceModel>(&m, [](const SurfaceModel*) {}));
    std::vector<CriticalPoint> out;
    for (const auto& p : found) {
        CriticalPoint c;
        c.position = p;
        c.value = m.f(p);
        const Mat2 j = field_jacobian(m, grad, p);
        Eigen::SelfAdjointEigenSolver<Mat2> es(0.5 * (j + j.transpose()));
        const auto [t1, t2] = m.frame(p);
        for (int k = 0; k < 2; ++k) {
            const double ev = es.eigenvalues()(k);
            if (std::abs(ev) < 1e-6) fail(ErrorCode::EvaluationFailure, "degenerate critical point");
            c.eigenvalues[static_cast<std::size_t>(k)] = ev;
            c.vectors[static_cast<std::size_t>(k)] = normalize_sign(es.eigenvectors()(0, k) * t1 + es.eigenvectors()(1, k) * t2);
            if (ev < 0) ++c.index;
        }
        c.orientation = m.det(c.vectors[0], c.vectors[1], p) > 0 ? 1 : -1;
        out.push_back(c);
    }
    std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        if (a.index != b.index) return a.index < b.index;
        if (std::abs(a.value - b.value) > 1e-9) return a.value < b.value;
        if (std::abs(a.position.x() - b.position.x()) > 1e-9) return a.position.x() < b.position.x();
        return a.position.y() < b.position.y();
    });
    const char* names[] = {"min", "saddle", "max"};
    std::array<int, 3> counter{0, 0, 0};
    for (auto& c : out) c.id = names[c.index] + std::to_string(counter[static_cast<std::size_t>(c.index)]++);
    return out;
}

} // namespace morsekit::flow
