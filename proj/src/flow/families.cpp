#include "morsekit/flow/scene.hpp"

#include <cmath>
#include <numbers>

namespace morsekit::flow {

namespace {

constexpr double kTau = 2 * std::numbers::pi;

class SphereHeight : public SurfaceModel {
public:
    std::string family() const override { return "sphere_height"; }
    int euler_characteristic() const override { return 2; }
    double f(const Vec3& x) const override { return x.z(); }
    Vec3 grad_f(const Vec3&) const override { return Vec3::UnitZ(); }
    Mat3 hess_f(const Vec3&) const override { return Mat3::Zero(); }
    double g(const Vec3& x) const override { return x.squaredNorm() - 1; }
    Vec3 grad_g(const Vec3& x) const override { return 2 * x; }
    Mat3 hess_g(const Vec3&) const override { return 2 * Mat3::Identity(); }
    std::vector<Vec3> critical_seeds() const override { return {Vec3(0.01, 0.02, 0.99), Vec3(-0.02, 0.01, -0.99)}; }
    std::vector<Vec3> sample_points(int res) const override {
        std::vector<Vec3> out;
        for (int i = 0; i < res; ++i)
            for (int j = 0; j < res; ++j) {
                const double th = std::numbers::pi * (i + 0.5) / res, ph = kTau * (j + 0.5) / res;
                out.emplace_back(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
            }
        return out;
    }
};

// Tube of radius r around the figure-eight y^2 = x^2 - x^4, with a tilted linear height.
class Genus2Height : public SurfaceModel {
public:
    Genus2Height(double r, Vec3 w) : r_(r), w_(std::move(w)) {}
    std::string family() const override { return "genus2_height"; }
    int euler_characteristic() const override { return -2; }
    double f(const Vec3& x) const override { return w_.dot(x); }
    Vec3 grad_f(const Vec3&) const override { return w_; }
    Mat3 hess_f(const Vec3&) const override { return Mat3::Zero(); }
    double g(const Vec3& p) const override {
        const double h = shape(p);
        return h * h + p.z() * p.z() - r_ * r_;
    }
    Vec3 grad_g(const Vec3& p) const override {
        const double h = shape(p), x = p.x(), y = p.y();
        return Vec3(2 * h * (-2 * x + 4 * x * x * x), 4 * h * y, 2 * p.z());
    }
    Mat3 hess_g(const Vec3& p) const override {
        const double h = shape(p), x = p.x(), y = p.y();
        const double hx = -2 * x + 4 * x * x * x, hy = 2 * y, hxx = -2 + 12 * x * x, hyy = 2;
        Mat3 m = Mat3::Zero();
        m(0, 0) = 2 * (hx * hx + h * hxx);
        m(1, 1) = 2 * (hy * hy + h * hyy);
        m(0, 1) = m(1, 0) = 2 * hx * hy;
        m(2, 2) = 2;
        return m;
    }
    std::vector<Vec3> critical_seeds() const override {
        std::vector<Vec3> out;
        for (int i = 0; i <= 22; ++i)
            for (int j = 0; j <= 12; ++j)
                for (double z : {-0.1, 0.0, 0.1}) out.emplace_back(-1.1 + 0.1 * i, -0.6 + 0.1 * j, z);
        return out;
    }
    std::vector<Vec3> sample_points(int res) const override {
        std::vector<Vec3> out;
        for (int i = 0; i < 2 * res; ++i)
            for (int j = 0; j < res; ++j) {
                const double x = -1.15 + 2.3 * (i + 0.5) / (2 * res), y = -0.65 + 1.3 * (j + 0.5) / res;
                const double h = shape(Vec3(x, y, 0));
                if (std::abs(h) >= r_) continue;
                const double z = std::sqrt(r_ * r_ - h * h);
                out.push_back(project(Vec3(x, y, z)));
                out.push_back(project(Vec3(x, y, -z)));
            }
        return out;
    }

private:
    static double shape(const Vec3& p) { return p.y() * p.y() - p.x() * p.x() + p.x() * p.x() * p.x() * p.x(); }
    double r_;
    Vec3 w_;
};

// Flat torus chart with f = a cos(2 pi fx x) + b cos(2 pi fy y).
class TorusProduct : public SurfaceModel {
public:
    TorusProduct(double a, double b, int fx, int fy) : a_(a), b_(b), fx_(fx), fy_(fy) {}
    std::string family() const override { return "torus_product"; }
    bool periodic() const override { return true; }
    int euler_characteristic() const override { return 0; }
    double f(const Vec3& p) const override { return a_ * std::cos(kTau * fx_ * p.x()) + b_ * std::cos(kTau * fy_ * p.y()); }
    Vec3 grad_f(const Vec3& p) const override {
        return Vec3(-a_ * kTau * fx_ * std::sin(kTau * fx_ * p.x()), -b_ * kTau * fy_ * std::sin(kTau * fy_ * p.y()), 0);
    }
    Mat3 hess_f(const Vec3& p) const override {
        Mat3 m = Mat3::Zero();
        m(0, 0) = -a_ * kTau * kTau * fx_ * fx_ * std::cos(kTau * fx_ * p.x());
        m(1, 1) = -b_ * kTau * kTau * fy_ * fy_ * std::cos(kTau * fy_ * p.y());
        return m;
    }
    std::vector<Vec3> critical_seeds() const override {
        std::vector<Vec3> out;
        for (int i = 0; i < 2 * fx_; ++i)
            for (int j = 0; j < 2 * fy_; ++j) out.emplace_back((i + 0.003) / (2.0 * fx_), (j - 0.002) / (2.0 * fy_), 0);
        return out;
    }

private:
    double a_, b_;
    int fx_, fy_;
};

// Height of a standing torus in the flat chart, f = (R + r cos 2 pi y) cos 2 pi x + tilt sin 2 pi y.
// With tilt = 0 the circle y = 1/2 carries a saddle-to-saddle connection.
class TorusStanding : public SurfaceModel {
public:
    TorusStanding(double big, double small, double tilt) : big_(big), small_(small), tilt_(tilt) {}
    std::string family() const override { return "torus_standing"; }
    bool periodic() const override { return true; }
    int euler_characteristic() const override { return 0; }
    double f(const Vec3& p) const override {
        return (big_ + small_ * std::cos(kTau * p.y())) * std::cos(kTau * p.x()) + tilt_ * std::sin(kTau * p.y());
    }
    Vec3 grad_f(const Vec3& p) const override {
        const double cx = std::cos(kTau * p.x()), sx = std::sin(kTau * p.x()), cy = std::cos(kTau * p.y()), sy = std::sin(kTau * p.y());
        return Vec3(-kTau * (big_ + small_ * cy) * sx, -kTau * small_ * sy * cx + kTau * tilt_ * cy, 0);
    }
    Mat3 hess_f(const Vec3& p) const override {
        const double cx = std::cos(kTau * p.x()), sx = std::sin(kTau * p.x()), cy = std::cos(kTau * p.y()), sy = std::sin(kTau * p.y());
        Mat3 m = Mat3::Zero();
        m(0, 0) = -kTau * kTau * (big_ + small_ * cy) * cx;
        m(1, 1) = -kTau * kTau * small_ * cy * cx - kTau * kTau * tilt_ * sy;
        m(0, 1) = m(1, 0) = kTau * kTau * small_ * sy * sx;
        return m;
    }
    std::vector<Vec3> critical_seeds() const override {
        std::vector<Vec3> out;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) out.emplace_back(0.5 * i + 0.001, 0.5 * j + 0.002, 0);
        return out;
    }

private:
    double big_, small_, tilt_;
};

// Circle-valued map on the torus with 2k critical points:
// F = x + a/(2 pi k) sin(2 pi k x)(1 + cos 2 pi y)/2 + c/(2 pi) cos 2 pi y.
class TorusCircleValued : public SurfaceModel {
public:
    TorusCircleValued(int k, double a, double c) : k_(k), a_(a), c_(c) {}
    std::string family() const override { return "torus_circle_valued"; }
    SceneKind kind() const override { return SceneKind::CircleValued; }
    bool periodic() const override { return true; }
    int euler_characteristic() const override { return 0; }
    double f(const Vec3& p) const override {
        const double cy = std::cos(kTau * p.y());
        double v = p.x() + c_ / kTau * cy;
        if (k_ > 0) v += a_ / (kTau * k_) * std::sin(kTau * k_ * p.x()) * (1 + cy) / 2;
        return v;
    }
    Vec3 grad_f(const Vec3& p) const override {
        const double cy = std::cos(kTau * p.y()), sy = std::sin(kTau * p.y());
        double fx = 1, fy = -c_ * sy;
        if (k_ > 0) {
            fx += a_ * std::cos(kTau * k_ * p.x()) * (1 + cy) / 2;
            fy -= a_ / (2.0 * k_) * std::sin(kTau * k_ * p.x()) * sy;
        }
        return Vec3(fx, fy, 0);
    }
    Mat3 hess_f(const Vec3& p) const override {
        const double cy = std::cos(kTau * p.y()), sy = std::sin(kTau * p.y());
        Mat3 m = Mat3::Zero();
        m(1, 1) = -kTau * c_ * cy;
        if (k_ > 0) {
            const double ck = std::cos(kTau * k_ * p.x()), sk = std::sin(kTau * k_ * p.x());
            m(0, 0) = -a_ * kTau * k_ * sk * (1 + cy) / 2;
            m(0, 1) = m(1, 0) = -a_ * kTau / 2 * ck * sy;
            m(1, 1) -= a_ * kTau / (2.0 * k_) * sk * cy;
        }
        return m;
    }
    std::vector<Vec3> critical_seeds() const override {
        std::vector<Vec3> out;
        for (int j = 0; j < k_; ++j) {
            out.emplace_back((1.0 / 3 + j) / k_ + 0.001, 0.001, 0);
            out.emplace_back((2.0 / 3 + j) / k_ + 0.001, 0.001, 0);
        }
        return out;
    }

private:
    int k_;
    double a_, c_;
};

const nlohmann::json& defaults() {
    static const nlohmann::json d = {
        {"sphere_height", nlohmann::json::object()},
        {"torus_product", {{"a", 1.0}, {"b", 0.6}, {"freq_x", 1}, {"freq_y", 1}}},
        {"torus_standing", {{"R", 2.0}, {"r", 1.0}, {"tilt", 0.0}}},
        {"genus2_height", {{"radius", 0.12}, {"height", {1.0, 0.45, 0.3}}}},
        {"torus_circle_valued", {{"k", 1}, {"a", 2.0}, {"c", 1.5}, {"lambda", 1.0}}},
    };
    return d;
}

} // namespace

std::vector<std::string> scene_families() { return {"sphere_height", "torus_product", "torus_standing", "genus2_height", "torus_circle_valued"}; }

nlohmann::json family_params(const std::string& family, const nlohmann::json& overrides) {
    const auto& d = defaults();
    if (!d.contains(family)) fail(ErrorCode::Config, "unknown scene family '" + family + "'");
    nlohmann::json p = d.at(family);
    if (!overrides.is_null()) {
        if (!overrides.is_object()) fail(ErrorCode::Config, "scene params must be an object");
        for (const auto& [key, value] : overrides.items()) {
            if (!p.contains(key)) fail(ErrorCode::Config, "unknown parameter '" + key + "' for family '" + family + "'");
            p[key] = value;
        }
    }
    return p;
}

Scene make_scene(const std::string& family, const nlohmann::json& params, const NumericOptions& options) {
    const nlohmann::json p = family_params(family, params);
    std::shared_ptr<const SurfaceModel> model;
    try {
        if (family == "sphere_height") {
            model = std::make_shared<SphereHeight>();
        } else if (family == "torus_product") {
            model = std::make_shared<TorusProduct>(p.at("a").get<double>(), p.at("b").get<double>(), p.at("freq_x").get<int>(), p.at("freq_y").get<int>());
        } else if (family == "torus_standing") {
            model = std::make_shared<TorusStanding>(p.at("R").get<double>(), p.at("r").get<double>(), p.at("tilt").get<double>());
        } else if (family == "genus2_height") {
            const auto h = p.at("height").get<std::vector<double>>();
            if (h.size() != 3) fail(ErrorCode::Config, "genus2_height: height must have 3 components");
            model = std::make_shared<Genus2Height>(p.at("radius").get<double>(), Vec3(h[0], h[1], h[2]));
        } else {
            const int k = p.at("k").get<int>();
            const double a = p.at("a").get<double>(), c = p.at("c").get<double>();
            if (k < 0) fail(ErrorCode::Config, "torus_circle_valued: k must be nonnegative");
            if (k > 0 && c <= a / (2.0 * k)) fail(ErrorCode::Config, "torus_circle_valued: need c > a/(2k)");
            if (k > 0 && a <= 1) fail(ErrorCode::Config, "torus_circle_valued: need a > 1 for critical points");
            model = std::make_shared<TorusCircleValued>(k, a, c);
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Config, std::string("bad scene parameter: ") + e.what());
    }
    auto critical = find_critical_points(*model, options);
    auto field = std::make_shared<GradientField>(model);
    nlohmann::json described = {{"family", family}, {"params", p}};
    return Scene(model, field, std::move(critical), options, described);
}

Scene scene_from_json(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("family") || !spec.at("family").is_string())
        fail(ErrorCode::Config, "scene spec needs a string 'family'");
    NumericOptions opt;
    if (spec.contains("overrides")) opt = numeric_options_from_json(spec.at("overrides"));
    return make_scene(spec.at("family").get<std::string>(), spec.value("params", nlohmann::json::object()), opt);
}

} // namespace morsekit::flow
