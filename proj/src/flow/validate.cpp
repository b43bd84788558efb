#include "morsekit/flow/validate.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace morsekit::flow {

namespace {

constexpr double kTau = 2 * std::numbers::pi;

double smoothstep(double t) {
    if (t <= 0) return 0;
    if (t >= 1) return 1;
    return t * t * t * (t * (6 * t - 15) + 10);
}

double distance_to(const Vec3& x, const Vec3& c, bool periodic) {
    Vec3 d = x - c;
    if (periodic) {
        d.x() -= std::round(d.x());
        d.y() -= std::round(d.y());
    }
    return d.norm();
}

nlohmann::json vec(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

} // namespace

ValidationReport validate_f_gradient(const Scene& scene, int resolution) {
    const auto& m = scene.model();
    ValidationReport r;
    bool first = true;
    for (const auto& x : m.sample_points(resolution)) {
        if (scene.locate(x, scene.options().trap_radius)) continue;
        const Vec3 v = scene.v(x);
        if (!v.allFinite()) fail(ErrorCode::EvaluationFailure, "field is not finite at a sample point");
        const double a = m.grad_f(x).dot(v);
        ++r.samples;
        if (first || a < r.a_min) {
            r.a_min = a;
            r.a_witness = x;
            first = false;
        }
        if (!(a > 0)) ++r.a_violations;
    }
    if (r.a_violations == 0) r.a_witness.reset();
    for (const auto& c : scene.critical_points()) {
        const Mat2 h = m.intrinsic_hessian(c.position);
        const Mat2 j = field_jacobian(m, *scene.field_ptr(), c.position);
        const Mat2 q = j.transpose() * h;
        Eigen::SelfAdjointEigenSolver<Mat2> es(0.5 * (q + q.transpose()));
        GradientCheck g{c.id, es.eigenvalues()(0), es.eigenvalues()(0) > 1e-8};
        r.b_checks.push_back(g);
    }
    return r;
}

nlohmann::json to_json(const ValidationReport& r) {
    nlohmann::json b = nlohmann::json::array();
    for (const auto& c : r.b_checks) b.push_back({{"id", c.id}, {"min_eigenvalue", c.min_eigenvalue}, {"pass", c.pass}});
    nlohmann::json j = {{"pass", r.pass()},
                        {"condition_a", {{"pass", r.condition_a()}, {"samples", r.samples}, {"violations", r.a_violations}, {"min_value", r.a_min}}},
                        {"condition_b", {{"pass", r.condition_b()}, {"points", b}}}};
    if (r.a_witness) j["condition_a"]["witness"] = vec(*r.a_witness);
    return j;
}

double critical_cutoff(const Scene& scene, const Vec3& x, double r0, double r1) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& c : scene.critical_points()) d = std::min(d, distance_to(x, c.position, scene.model().periodic()));
    return smoothstep((d - r0) / (r1 - r0));
}

PerturbedField::PerturbedField(const Scene& scene, std::uint64_t seed, double delta)
    : base_(scene.field_ptr()), model_(scene.model_ptr()), periodic_(scene.model().periodic()), delta_(delta),
      r0_(2 * scene.options().trap_radius), r1_(4 * scene.options().trap_radius) {
    for (const auto& c : scene.critical_points()) centers_.push_back(c.position);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> freq(-3, 3);
    std::uniform_real_distribution<double> unif(-1, 1), phase(0, kTau);
    for (int i = 0; i < 6; ++i) {
        Mode mode;
        if (periodic_) {
            mode.wave = Vec3(freq(rng), freq(rng), 0);
            mode.dir = Vec3(unif(rng), unif(rng), 0);
        } else {
            mode.wave = Vec3(3 * unif(rng), 3 * unif(rng), 3 * unif(rng));
            mode.dir = Vec3(unif(rng), unif(rng), unif(rng));
        }
        if (mode.dir.norm() < 1e-3) mode.dir = Vec3::UnitX();
        mode.dir.normalize();
        mode.dir /= 6;
        mode.phase = phase(rng);
        modes_.push_back(mode);
    }
}

Vec3 PerturbedField::at(const Vec3& x) const {
    const Vec3 v = base_->at(x);
    if (delta_ == 0) return v;
    double d = std::numeric_limits<double>::infinity();
    for (const auto& c : centers_) d = std::min(d, distance_to(x, c, periodic_));
    const double beta = smoothstep((d - r0_) / (r1_ - r0_));
    if (beta == 0) return v;
    Vec3 w = Vec3::Zero();
    for (const auto& m : modes_) w += std::sin(kTau * m.wave.dot(x) + m.phase) * m.dir;
    const Vec3 n = model_->normal(x);
    w -= n.dot(w) * n;
    return v + delta_ * beta * w;
}

Scene perturb(const Scene& scene, std::uint64_t seed, double delta) {
    if (delta < 0) fail(ErrorCode::InvalidArgument, "perturbation magnitude must be nonnegative");
    if (delta == 0) return scene;
    Scene out = scene.with_field(std::make_shared<PerturbedField>(scene, seed, delta));
    const auto report = validate_f_gradient(out);
    if (!report.pass())
        fail(ErrorCode::ValidationLost, "perturbation with seed " + std::to_string(seed) + " and delta " + std::to_string(delta) +
                                            " is not an f-gradient (" + std::to_string(report.a_violations) + " condition A violations)");
    return out;
}

RotatedSaddleField::RotatedSaddleField(const Scene& scene, std::size_t critical)
    : base_(scene.field_ptr()), model_(scene.model_ptr()), center_(scene.critical(critical).position),
      radius_(2 * scene.options().trap_radius) {
    const auto& ev = scene.critical(critical).eigenvalues;
    const double h1 = ev[0], h2 = ev[1];
    const double gap = std::max(std::abs(h2 - h1), 1e-3);
    strength_ = 4 * std::abs(h1 * h2) / gap + 1;
}

Vec3 RotatedSaddleField::at(const Vec3& x) const {
    const Vec3 v = base_->at(x);
    Vec3 d = x - center_;
    if (model_->periodic()) {
        d.x() -= std::round(d.x());
        d.y() -= std::round(d.y());
    }
    const double beta = 1 - smoothstep((d.norm() - radius_) / radius_);
    if (beta == 0) return v;
    const Vec3 n = model_->normal(x);
    return v + beta * strength_ * n.cross(d);
}

} // namespace morsekit::flow
