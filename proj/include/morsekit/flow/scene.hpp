#pragma once

#include "morsekit/error.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace morsekit::flow {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Shift = std::array<int, 2>;

enum class SceneKind { RealValued, CircleValued };

std::string to_string(SceneKind k);

/// A closed surface {g = 0} in R^3 carrying a function f (a real lift F for
/// circle-valued scenes). Flat chart scenes use g = z and are periodic with
/// period 1 in x and y; for circle-valued scenes F(x + 1, y) = F(x, y) + 1.
class SurfaceModel {
public:
    virtual ~SurfaceModel() = default;

    virtual std::string family() const = 0;
    virtual SceneKind kind() const { return SceneKind::RealValued; }
    virtual bool periodic() const { return false; }
    virtual int euler_characteristic() const = 0;

    virtual double f(const Vec3& x) const = 0;
    virtual Vec3 grad_f(const Vec3& x) const = 0;
    virtual Mat3 hess_f(const Vec3& x) const = 0;

    virtual double g(const Vec3& x) const { return x.z(); }
    virtual Vec3 grad_g(const Vec3&) const { return Vec3::UnitZ(); }
    virtual Mat3 hess_g(const Vec3&) const { return Mat3::Zero(); }

    /// Newton starting points for the critical point search.
    virtual std::vector<Vec3> critical_seeds() const = 0;

    /// Deterministic sample of points on the surface (one fundamental domain
    /// for periodic charts), roughly resolution^2 of them.
    virtual std::vector<Vec3> sample_points(int resolution) const;

    /// Bounding box used by the default sampler.
    virtual std::pair<Vec3, Vec3> bounds() const { return {Vec3(0, 0, 0), Vec3(1, 1, 0)}; }

    Vec3 project(const Vec3& x) const;
    Vec3 normal(const Vec3& x) const;
    /// Tangential part of the ambient gradient.
    Vec3 tangent_gradient(const Vec3& x) const;
    /// Oriented orthonormal tangent frame (t1, t2) with t1 x t2 = normal.
    std::pair<Vec3, Vec3> frame(const Vec3& x) const;
    /// Hessian of f restricted to the surface at a critical point, in frame(x).
    Mat2 intrinsic_hessian(const Vec3& x) const;
    /// Oriented area of (a, b) against the normal at x.
    double det(const Vec3& a, const Vec3& b, const Vec3& x) const;
};

class VectorField {
public:
    virtual ~VectorField() = default;
    virtual Vec3 at(const Vec3& x) const = 0;
};

struct NumericOptions {
    double trap_radius = 1e-2;
    double seed_offset = 1e-3;
    double tolerance = 1e-9;
    double max_arclength = 1e3;
    double max_step = 5e-3;
    double min_step = 1e-13;
    double zero_tolerance = 1e-9;
    double merge_radius = 1e-5;

    void scale_tolerance(double s) { tolerance *= s; }
};

nlohmann::json to_json(const NumericOptions& o);
NumericOptions numeric_options_from_json(const nlohmann::json& j, NumericOptions base = {});

struct CriticalPoint {
    std::string id;
    Vec3 position;
    int index = 0;
    double value = 0;
    /// Eigenpairs of the linearized field in the tangent plane, ascending
    /// eigenvalues, vectors in ambient coordinates. For a saddle, vectors[0]
    /// spans the descending direction and vectors[1] the ascending one.
    std::array<double, 2> eigenvalues{};
    std::array<Vec3, 2> vectors{};
    /// Sign of det(vectors[0], vectors[1]); the orientation of D(p) at a maximum.
    int orientation = 1;
};

class Scene {
public:
    Scene(std::shared_ptr<const SurfaceModel> model, std::shared_ptr<const VectorField> field, std::vector<CriticalPoint> critical,
          NumericOptions options, nlohmann::json params);

    const SurfaceModel& model() const { return *model_; }
    std::shared_ptr<const SurfaceModel> model_ptr() const { return model_; }
    std::shared_ptr<const VectorField> field_ptr() const { return field_; }
    const std::vector<CriticalPoint>& critical_points() const { return critical_; }
    const CriticalPoint& critical(std::size_t i) const { return critical_.at(i); }
    std::optional<std::size_t> find(const std::string& id) const;
    const NumericOptions& options() const { return options_; }
    const nlohmann::json& params() const { return params_; }
    std::string family() const { return model_->family(); }
    SceneKind kind() const { return model_->kind(); }

    double f(const Vec3& x) const { return model_->f(x); }
    Vec3 v(const Vec3& x) const { return field_->at(x); }

    /// Same scene with another field (critical data is kept).
    Scene with_field(std::shared_ptr<const VectorField> field) const;
    Scene with_options(NumericOptions options) const;

    /// Position of critical point i translated by an integer lattice shift.
    Vec3 lift(std::size_t i, const Shift& s = {0, 0}) const;

    /// Critical point whose trap ball (radius r) contains x, with its lattice shift.
    std::optional<std::pair<std::size_t, Shift>> locate(const Vec3& x, double r) const;

    std::vector<std::size_t> of_index(int k) const;

private:
    std::shared_ptr<const SurfaceModel> model_;
    std::shared_ptr<const VectorField> field_;
    std::vector<CriticalPoint> critical_;
    NumericOptions options_;
    nlohmann::json params_;
};

/// The gradient of f along the surface.
class GradientField : public VectorField {
public:
    explicit GradientField(std::shared_ptr<const SurfaceModel> m) : model_(std::move(m)) {}
    Vec3 at(const Vec3& x) const override { return model_->tangent_gradient(x); }

private:
    std::shared_ptr<const SurfaceModel> model_;
};

class ScaledField : public VectorField {
public:
    ScaledField(std::shared_ptr<const VectorField> base, double factor) : base_(std::move(base)), factor_(factor) {}
    Vec3 at(const Vec3& x) const override { return factor_ * base_->at(x); }

private:
    std::shared_ptr<const VectorField> base_;
    double factor_;
};

/// Locates, classifies and labels critical points of the tangent gradient.
/// Labels are min<i>, saddle<i>, max<i>, numbered by increasing value.
std::vector<CriticalPoint> find_critical_points(const SurfaceModel& m, const NumericOptions& opt);

/// Linearization of a tangent field at x in frame(x), by central differences.
Mat2 field_jacobian(const SurfaceModel& m, const VectorField& v, const Vec3& x, double h = 1e-5);

/// Builds a shipped scene. Families: sphere_height, torus_product,
/// torus_standing, genus2_height, torus_circle_valued. Throws Config on an
/// unknown family or parameter.
Scene make_scene(const std::string& family, const nlohmann::json& params = nlohmann::json::object(), const NumericOptions& options = {});

/// {family, params, overrides}
Scene scene_from_json(const nlohmann::json& spec);

/// Default parameters of a family, merged with overrides.
nlohmann::json family_params(const std::string& family, const nlohmann::json& overrides);

std::vector<std::string> scene_families();

} // namespace morsekit::flow
