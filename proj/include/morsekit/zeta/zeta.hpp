#pragma once

#include "morsekit/flow/trace.hpp"
#include "morsekit/rings/witt.hpp"
#include "morsekit/zeta/mapping_torus.hpp"

#include <variant>

namespace morsekit::zeta {

/// Partially defined return map Phi on a regular level V_lambda: descent to
/// V_{lambda-1} composed with t^-1. V_lambda is parameterized by y in [0, 1)
/// (a graph over y on circle-valued scenes) or by the torus fiber.
class ReturnMap {
public:
    /// Throws RegularValueError; InvalidArgument if V_lambda is not one graph over y or the scene has minima.
    static ReturnMap of_scene(const flow::Scene& scene, double lambda, int resolution = 256);
    static ReturnMap of_mapping_torus(const MappingTorus& m, double lambda, int resolution = 256);

    double lambda() const { return lambda_; }
    int resolution() const { return resolution_; }
    int dimension() const;
    bool is_scene() const { return scene_.has_value(); }
    const MappingTorus& mapping_torus() const { return *torus_; }

    /// Point of V_lambda over y (scenes only).
    flow::Vec3 level_point(double y) const;
    /// Lifted Phi^j(y) for j = 1..n (one-dimensional levels). On scenes the
    /// trace starts at level_point(y).
    std::vector<double> iterates(double y, int n) const;
    double iterate(double y, int n) const { return iterates(y, n).back(); }
    flow::Vec2 iterate(const flow::Vec2& x, int n) const;

    /// Points of [0, 1) outside the domain of Phi^n: where V_lambda meets the
    /// ascending discs of the saddles within n periods (scenes only).
    std::vector<double> domain_boundary(int n) const;

private:
    std::optional<flow::Scene> scene_;
    std::optional<MappingTorus> torus_;
    double lambda_ = 0;
    int resolution_ = 256;
};

struct FixedPoint {
    int n = 0;
    std::vector<double> location;
    int index = 0;
    double derivative = 0; ///< (Phi^n)' on curves, det(I - D Phi^n) on the torus fiber
};

/// Fixed points of Phi^n with indices sign(1 - (Phi^n)') (sign det(I - D Phi^n) on
/// the torus fiber). Throws DegenerateFixedPoint, ResolutionTooCoarse.
std::vector<FixedPoint> fixed_points(const ReturnMap& rm, int n);

/// L(Phi^n) for n = 1..order; the located fixed points are appended to `found`.
std::vector<long long> lefschetz_counts(const ReturnMap& rm, int order, std::vector<FixedPoint>* found = nullptr);

/// exp(sum L(Phi^n) / n t^n), coefficients of t^0..t^order; NonIntegral on a miscount.
rings::WittUnit zeta_series(const std::vector<long long>& counts, int order);

/// Lefschetz numbers of the monodromy powers from the homology action.
std::vector<long long> homological_lefschetz(const MappingTorus& m, int order);

struct ZetaReport {
    double lambda = 0;
    int order = 0;
    std::vector<long long> counts;
    rings::WittUnit zeta;
    std::vector<FixedPoint> fixed_points;
};

ZetaReport zeta_report(const ReturnMap& rm, int order);
nlohmann::json to_json(const ZetaReport& r, bool with_points = false);
std::string fixed_points_csv(const ZetaReport& r);

} // namespace morsekit::zeta
