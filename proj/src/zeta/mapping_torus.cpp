#include "morsekit/zeta/mapping_torus.hpp"

#include <cmath>
#include <numbers>

namespace morsekit::zeta {

using flow::Mat2;
using flow::Vec2;

namespace {

constexpr double kTau = 2 * std::numbers::pi;
constexpr int kDriftSteps = 64;

double bump(double s) {
    const double r = std::sin(std::numbers::pi * s);
    return r * r;
}

// RK4 for dx/ds = drift * bump(s) * w(x) from s = lambda down to lambda - 1.
template <class X, class W>
X descend(X x, double lambda, double drift, W&& w) {
    if (drift == 0) return x;
    const double h = -1.0 / kDriftSteps;
    double s = lambda;
    auto rhs = [&](const X& p, double at) -> X { return drift * bump(at) * w(p); };
    for (int i = 0; i < kDriftSteps; ++i) {
        const X k1 = rhs(x, s);
        const X k2 = rhs(x + 0.5 * h * k1, s + 0.5 * h);
        const X k3 = rhs(x + 0.5 * h * k2, s + 0.5 * h);
        const X k4 = rhs(x + h * k3, s + h);
        x = x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        s += h;
    }
    return x;
}

} // namespace

Vec2 MappingTorus::return_map(const Vec2& x, double lambda) const {
    if (kind != Kind::Linear) fail(ErrorCode::InvalidArgument, "circle-map mapping torus has a one-dimensional fiber");
    const Vec2 y = descend(x, lambda, drift, [](const Vec2& p) -> Vec2 { return Vec2(std::sin(kTau * p.y()), std::sin(kTau * p.x())) / kTau; });
    return monodromy * y;
}

double MappingTorus::return_map(double y, double lambda) const {
    if (kind != Kind::Circle) fail(ErrorCode::InvalidArgument, "linear mapping torus has a two-dimensional fiber");
    const double z = descend(y, lambda, drift, [](double p) { return std::sin(kTau * p) / kTau; });
    return degree * z + amplitude * std::sin(kTau * z) / kTau;
}

std::vector<Mat2> MappingTorus::homology_action() const {
    Mat2 h0 = Mat2::Zero(), h1 = Mat2::Zero(), h2 = Mat2::Zero();
    h0(0, 0) = 1;
    if (kind == Kind::Linear) {
        h1 = monodromy;
        h2(0, 0) = monodromy.determinant();
    } else {
        h1(0, 0) = degree;
    }
    return {h0, h1, h2};
}

nlohmann::json mapping_torus_defaults() { return {{"monodromy", {{2, 1}, {1, 1}}}, {"drift", 0.0}}; }

MappingTorus MappingTorus::from_json(const nlohmann::json& params) {
    MappingTorus m;
    try {
        const bool circle = params.contains("circle_degree");
        if (circle && params.contains("monodromy")) fail(ErrorCode::Config, "give either 'monodromy' or 'circle_degree'");
        for (const auto& [key, _] : params.items())
            if (key != "monodromy" && key != "circle_degree" && key != "amplitude" && key != "drift")
                fail(ErrorCode::Config, "unknown mapping_torus parameter '" + key + "'");
        m.drift = params.value("drift", 0.0);
        if (circle) {
            m.kind = Kind::Circle;
            m.degree = params.at("circle_degree").get<int>();
            m.amplitude = params.value("amplitude", 0.0);
            if (m.degree == 0) fail(ErrorCode::Config, "circle_degree must be nonzero");
            if (std::abs(m.amplitude) >= std::abs(m.degree) / 2.0) fail(ErrorCode::Config, "amplitude too large for a covering map");
        } else {
            if (params.contains("amplitude")) fail(ErrorCode::Config, "'amplitude' applies to circle maps only");
            const auto a = params.value("monodromy", mapping_torus_defaults().at("monodromy")).get<std::vector<std::vector<int>>>();
            if (a.size() != 2 || a[0].size() != 2 || a[1].size() != 2) fail(ErrorCode::Config, "monodromy must be 2x2");
            m.monodromy << a[0][0], a[0][1], a[1][0], a[1][1];
            if (std::abs(std::lround(m.monodromy.determinant())) != 1) fail(ErrorCode::Config, "monodromy must be invertible over Z");
        }
        if (std::abs(m.drift) > 0.5) fail(ErrorCode::Config, "drift must be at most 0.5 in absolute value");
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Config, std::string("bad mapping_torus parameter: ") + e.what());
    }
    return m;
}

nlohmann::json MappingTorus::to_json() const {
    if (kind == Kind::Circle) return {{"circle_degree", degree}, {"amplitude", amplitude}, {"drift", drift}};
    return {{"monodromy", {{std::lround(monodromy(0, 0)), std::lround(monodromy(0, 1))}, {std::lround(monodromy(1, 0)), std::lround(monodromy(1, 1))}}},
            {"drift", drift}};
}

} // namespace morsekit::zeta
