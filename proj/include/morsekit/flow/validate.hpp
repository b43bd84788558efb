#pragma once

#include "morsekit/flow/scene.hpp"

#include <cstdint>

namespace morsekit::flow {

struct GradientCheck {
    std::string id;
    double min_eigenvalue = 0; ///< of the symmetrized form h -> f''(p)(v'(p)h, h)
    bool pass = false;
};

struct ValidationReport {
    int samples = 0;
    int a_violations = 0;
    double a_min = 0; ///< smallest f'(x)(v(x)) over the samples
    std::optional<Vec3> a_witness;
    std::vector<GradientCheck> b_checks;

    bool condition_a() const { return a_violations == 0; }
    bool condition_b() const {
        for (const auto& c : b_checks)
            if (!c.pass) return false;
        return true;
    }
    bool pass() const { return condition_a() && condition_b(); }
};

/// (A) f'(x)(v(x)) > 0 on a deterministic sample away from the trap balls;
/// (B) positive definiteness of the symmetrized f''(p)(v'(p)h, h) at each p.
ValidationReport validate_f_gradient(const Scene& scene, int resolution = 48);

nlohmann::json to_json(const ValidationReport& r);

/// Smooth cutoff: 0 within r0 of every critical point, 1 beyond r1.
double critical_cutoff(const Scene& scene, const Vec3& x, double r0, double r1);

/// v + w, where w is a pseudorandom trigonometric field (lattice-periodic on
/// periodic charts) cut off near the critical points, tangent, |w| <= delta.
class PerturbedField : public VectorField {
public:
    PerturbedField(const Scene& scene, std::uint64_t seed, double delta);
    Vec3 at(const Vec3& x) const override;

private:
    struct Mode {
        Vec3 wave;
        Vec3 dir;
        double phase;
    };
    std::shared_ptr<const VectorField> base_;
    std::shared_ptr<const SurfaceModel> model_;
    std::vector<Vec3> centers_;
    bool periodic_;
    double delta_, r0_, r1_;
    std::vector<Mode> modes_;
};

/// The perturbed scene; ValidationLost if it is no longer an f-gradient.
Scene perturb(const Scene& scene, std::uint64_t seed, double delta);

/// Adds a rotation c * n x (x - p) near critical point p, large enough that
/// condition B fails at p while v(p) = 0 is kept.
class RotatedSaddleField : public VectorField {
public:
    RotatedSaddleField(const Scene& scene, std::size_t critical);
    Vec3 at(const Vec3& x) const override;
    double strength() const { return strength_; }

private:
    std::shared_ptr<const VectorField> base_;
    std::shared_ptr<const SurfaceModel> model_;
    Vec3 center_;
    double strength_, radius_;
};

} // namespace morsekit::flow
