#include "morsekit/novikov/novikov.hpp"

#include "morsekit/homalg/homology.hpp"

#include <algorithm>
#include <cmath>

namespace morsekit::novikov {

using flow::Direction;
using flow::Scene;
using flow::Shift;
using flow::Vec2;
using flow::Vec3;
using rings::NovikovSeries;

namespace {

void require_circle_valued(const Scene& scene) {
    if (scene.kind() != flow::SceneKind::CircleValued || !scene.model().periodic())
        fail(ErrorCode::InvalidArgument, "scene " + scene.family() + " is not circle-valued");
}

std::size_t position_in(const std::vector<std::string>& basis, const std::string& id) {
    return static_cast<std::size_t>(std::find(basis.begin(), basis.end(), id) - basis.begin());
}

NovikovMatrix zero_matrix(std::size_t rows, std::size_t cols, int precision) {
    NovikovMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = NovikovSeries::zero(precision);
    return m;
}

void add_term(NovikovSeries& entry, int sign, int exponent) {
    if (exponent < entry.precision()) entry += NovikovSeries::monomial(rings::Integer(sign), exponent);
}

std::vector<std::vector<std::string>> ids_by_index(const Scene& scene) {
    std::vector<std::vector<std::string>> bases(3);
    for (int k = 0; k <= 2; ++k)
        for (auto i : scene.of_index(k)) bases[static_cast<std::size_t>(k)].push_back(scene.critical(i).id);
    return bases;
}

int expected_end_index(Direction dir) { return dir == Direction::Descending ? 0 : 2; }

// Critical lift reached from x along the flow, or nothing if the level is hit first.
std::optional<std::pair<std::size_t, Shift>> flow_to_lift(const Scene& scene, const Vec3& x, Direction dir, double level) {
    const double rho = scene.options().trap_radius;
    std::optional<std::size_t> origin;
    Shift origin_shift{0, 0};
    if (auto hit = scene.locate(x, rho)) {
        const auto& c = scene.critical(hit->first);
        if (c.index == expected_end_index(dir)) return hit;
        if ((scene.lift(hit->first, hit->second) - x).norm() < 1e-7)
            fail(ErrorCode::TransversalityFailure, "image point lies on critical point " + c.id);
        origin = hit->first;
        origin_shift = hit->second;
    }
    flow::StopRule stop;
    stop.levels.push_back(level);
    const auto s = flow::trace(scene, x, dir, stop, origin, origin_shift);
    if (s.terminus.kind != flow::TerminusKind::Critical) return std::nullopt;
    const auto& end = scene.critical(s.terminus.critical);
    if (end.index != expected_end_index(dir)) fail(ErrorCode::TransversalityFailure, "image point flows into " + end.id);
    return std::make_pair(s.terminus.critical, s.terminus.shift);
}

std::string lifted_label(const std::string& id, int power) {
    if (power == 0) return id;
    return "t" + std::to_string(power) + "*" + id;
}

// sup and inf of F_t(A x) - F_s(x) over the torus
std::pair<double, double> level_drift(const morse::TorusMap& a, const Scene& source, const Scene& target) {
    constexpr int kGrid = 64;
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < kGrid; ++i)
        for (int j = 0; j < kGrid; ++j) {
            const Vec3 x((i + 0.5) / kGrid, (j + 0.5) / kGrid, 0);
            const double d = target.f(a.apply(x)) - source.f(x);
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
    return {lo - 0.1, hi + 0.1};
}

} // namespace

int basis_shift(const Scene& scene, std::size_t i, double lambda) {
    return static_cast<int>(std::floor(lambda - scene.critical(i).value));
}

void require_regular(const Scene& scene, double lambda, double tol) {
    for (const auto& c : scene.critical_points()) {
        const double d = lambda - c.value;
        if (std::abs(d - std::round(d)) < tol)
            fail(ErrorCode::RegularValueError, "lambda = " + std::to_string(lambda) + " is a critical value of " + c.id + " mod 1");
    }
}

std::string LiftedPoint::label() const { return std::to_string(power) + ":" + std::to_string(critical); }

UnrolledCobordism unroll(const Scene& scene, double lambda, int n) {
    require_circle_valued(scene);
    require_regular(scene, lambda);
    UnrolledCobordism w{lambda, n, {}};
    for (int k = 0; k <= 2; ++k)
        for (auto i : scene.of_index(k))
            for (int p = 0; p < n; ++p) {
                const int sx = basis_shift(scene, i, lambda) - p;
                w.points.push_back({i, p, {sx, 0}, scene.critical(i).value + sx});
            }
    return w;
}

homalg::NovikovComplex build_novikov_complex(const Scene& scene, double lambda, int order) {
    require_circle_valued(scene);
    require_regular(scene, lambda);
    if (order < 0) fail(ErrorCode::InvalidArgument, "order must be nonnegative");
    const int precision = order + 1;
    const auto bases = ids_by_index(scene);
    NovikovMatrix d1 = zero_matrix(bases[0].size(), bases[1].size(), precision);
    NovikovMatrix d2 = zero_matrix(bases[1].size(), bases[2].size(), precision);
    for (auto q : scene.of_index(1)) {
        const int sq = basis_shift(scene, q, lambda);
        const auto col = position_in(bases[1], scene.critical(q).id);
        for (auto dir : {Direction::Descending, Direction::Ascending})
            for (int b : {-1, 1}) {
                const auto s = flow::trace_branch(scene, q, dir, b, order + 1.0, {sq, 0});
                if (s.terminus.kind != flow::TerminusKind::Critical) continue;
                const auto& end = scene.critical(s.terminus.critical);
                if (end.index != expected_end_index(dir))
                    fail(ErrorCode::TransversalityFailure, "flow line from " + scene.critical(q).id + " to " + end.id);
                const int se = basis_shift(scene, s.terminus.critical, lambda);
                if (dir == Direction::Descending)
                    add_term(d1(position_in(bases[0], end.id), col), s.sign, se - s.terminus.shift[0]);
                else
                    add_term(d2(col, position_in(bases[2], end.id)), s.sign, s.terminus.shift[0] - se);
            }
    }
    homalg::NovikovComplex c(bases, {d1, d2});
    c.check_square_zero(precision);
    return c;
}

homalg::IntComplex cobordism_morse_complex(const Scene& scene, double lambda, int n) {
    const auto w = unroll(scene, lambda, n);
    std::vector<std::vector<std::string>> bases(3);
    std::vector<std::vector<LiftedPoint>> points(3);
    for (const auto& p : w.points) {
        const auto k = static_cast<std::size_t>(scene.critical(p.critical).index);
        bases[k].push_back(lifted_label(scene.critical(p.critical).id, p.power));
        points[k].push_back(p);
    }
    auto find_lift = [&](std::size_t crit, const Shift& shift) -> std::optional<std::size_t> {
        const auto k = static_cast<std::size_t>(scene.critical(crit).index);
        for (std::size_t i = 0; i < points[k].size(); ++i)
            if (points[k][i].critical == crit && points[k][i].shift[0] == shift[0]) return i;
        return std::nullopt;
    };
    homalg::IntMatrix d1(bases[0].size(), bases[1].size()), d2(bases[1].size(), bases[2].size());
    for (std::size_t j = 0; j < points[1].size(); ++j) {
        const auto& q = points[1][j];
        for (auto dir : {Direction::Descending, Direction::Ascending}) {
            const double span = dir == Direction::Descending ? q.value - (lambda - n) : lambda - q.value;
            for (int b : {-1, 1}) {
                const auto s = flow::trace_branch(scene, q.critical, dir, b, span, q.shift);
                if (s.terminus.kind != flow::TerminusKind::Critical) continue;
                if (scene.critical(s.terminus.critical).index != expected_end_index(dir))
                    fail(ErrorCode::TransversalityFailure, "saddle connection in the cobordism");
                const auto i = find_lift(s.terminus.critical, s.terminus.shift);
                if (!i) fail(ErrorCode::Mismatch, "flow line leaves the cobordism through a critical point outside it");
                if (dir == Direction::Descending) d1(*i, j) += s.sign;
                else d2(j, *i) += s.sign;
            }
        }
    }
    homalg::IntComplex c(bases, {d1, d2});
    c.check_square_zero();
    return c;
}

homalg::IntComplex truncate_novikov(const homalg::NovikovComplex& c, const Scene& scene, double lambda, int n) {
    const auto w = unroll(scene, lambda, n);
    std::vector<std::vector<std::string>> bases(3);
    std::vector<std::vector<std::pair<std::size_t, int>>> where(3); // (position in c's basis, power)
    for (const auto& p : w.points) {
        const auto& cp = scene.critical(p.critical);
        const auto k = static_cast<std::size_t>(cp.index);
        bases[k].push_back(lifted_label(cp.id, p.power));
        where[k].emplace_back(position_in(c.basis(cp.index), cp.id), p.power);
    }
    std::vector<homalg::IntMatrix> d;
    for (int k = 1; k <= 2; ++k) {
        const auto& rows = where[static_cast<std::size_t>(k - 1)];
        const auto& cols = where[static_cast<std::size_t>(k)];
        const auto dk = c.boundary(k);
        homalg::IntMatrix m(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) {
                const auto& e = dk(rows[i].first, cols[j].first);
                const int exponent = rows[i].second - cols[j].second;
                m(i, j) = e.coeff(exponent);
            }
        d.push_back(std::move(m));
    }
    return homalg::IntComplex(bases, d);
}

homalg::IntComplex strip_relative_cells(int n) {
    // level i = 1..n: vertex v_i, edge a_i from v_{i-1} to v_i, circle e_i at v_i,
    // face F_i between e_{i-1} and e_i; level 0 is the subcomplex.
    std::vector<std::vector<std::string>> bases(3);
    for (int i = 1; i <= n; ++i) {
        const auto s = std::to_string(i);
        bases[0].push_back("v" + s);
        bases[1].push_back("a" + s);
        bases[1].push_back("e" + s);
        bases[2].push_back("F" + s);
    }
    const auto un = static_cast<std::size_t>(n);
    homalg::IntMatrix d1(un, 2 * un), d2(2 * un, un);
    for (std::size_t i = 0; i < un; ++i) {
        d1(i, 2 * i) = 1;
        if (i > 0) d1(i - 1, 2 * i) = -1;
        d2(2 * i + 1, i) = -1;
        if (i > 0) d2(2 * i - 1, i) = 1;
    }
    homalg::IntComplex c(bases, {d1, d2});
    c.check_square_zero();
    return c;
}

TowerReport truncation_tower_check(const Scene& scene, double lambda, int n, const homalg::NovikovComplex* novikov) {
    TowerReport r;
    r.n = n;
    std::optional<homalg::NovikovComplex> own;
    if (!novikov) own = build_novikov_complex(scene, lambda, std::max(n, 1));
    const auto& nc = novikov ? *novikov : *own;
    const auto truncated = truncate_novikov(nc, scene, lambda, n);
    const auto morse = cobordism_morse_complex(scene, lambda, n);
    r.boundaries_equal = true;
    for (int k = 1; k <= 2 && r.boundaries_equal; ++k) {
        const auto a = truncated.boundary(k), b = morse.boundary(k);
        for (std::size_t i = 0; i < a.rows() && r.boundaries_equal; ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (a(i, j) != b(i, j)) {
                    r.boundaries_equal = false;
                    r.first_difference = "d" + std::to_string(k) + "(" + truncated.basis(k - 1)[i] + ", " + truncated.basis(k)[j] +
                                         "): truncated " + a(i, j).str() + ", cobordism " + b(i, j).str();
                    break;
                }
    }
    if (truncated.bases() != morse.bases()) {
        r.boundaries_equal = false;
        r.first_difference = "bases differ";
    }
    r.morse_betti = homalg::homology(morse).betti;
    r.cellular_betti = homalg::homology(strip_relative_cells(n)).betti;
    r.morse_betti.resize(3, 0);
    r.cellular_betti.resize(3, 0);
    r.homology_equal = r.morse_betti == r.cellular_betti;
    return r;
}

nlohmann::json to_json(const TowerReport& r) {
    nlohmann::json j = {{"n", r.n},           {"boundaries_equal", r.boundaries_equal}, {"morse_betti", r.morse_betti},
                        {"cellular_betti", r.cellular_betti}, {"homology_equal", r.homology_equal}, {"pass", r.pass()}};
    if (!r.first_difference.empty()) j["first_difference"] = r.first_difference;
    return j;
}

namespace {

struct InducedInput {
    const morse::TorusMap& a;
    const Scene& source;
    const Scene& target;
    const homalg::NovikovComplex& cs;
    const homalg::NovikovComplex& ct;
    double lambda_s, lambda_t;
    int precision;
    double drift_lo, drift_hi;
};

// Components with every basis lift moved up by `extra` deck steps.
std::vector<NovikovMatrix> gather(const InducedInput& in, int extra) {
    const auto& src = in.source;
    const auto& tgt = in.target;
    const int order = in.precision - 1;
    std::vector<NovikovMatrix> comps;
    for (int k = 0; k <= 2; ++k) comps.push_back(zero_matrix(in.ct.rank(k), in.cs.rank(k), in.precision));
    auto shift_s = [&](std::size_t i) { return basis_shift(src, i, in.lambda_s) + extra; };
    auto shift_t = [&](std::size_t i) { return basis_shift(tgt, i, in.lambda_t) + extra; };

    // degree 0: A(p) descends to t^k q
    for (auto p : src.of_index(0)) {
        const Vec3 x = in.a.apply(src.lift(p, {shift_s(p), 0}));
        const auto end = flow_to_lift(tgt, x, Direction::Descending, tgt.f(x) - order - 2);
        if (!end) continue;
        add_term(comps[0](position_in(in.ct.basis(0), tgt.critical(end->first).id), position_in(in.cs.basis(0), src.critical(p).id)), 1,
                 shift_t(end->first) - end->second[0]);
    }

    // degree 2: preimages of each target maximum ascend to t^-k m
    const int det_sign = in.a.degree() > 0 ? 1 : -1;
    for (auto q : tgt.of_index(2)) {
        const auto& cq = tgt.critical(q);
        const Vec3 y = tgt.lift(q, {shift_t(q), 0});
        const double x0 = y.x() - in.a.offset.x();
        for (const auto& x : in.a.preimages(y, Vec2(x0 - 0.5, 0))) {
            const double top = src.f(x) + order + 2 + std::max(0.0, in.lambda_s + extra - src.f(x));
            const auto end = flow_to_lift(src, x, Direction::Ascending, top);
            if (!end) continue;
            const auto& cp = src.critical(end->first);
            add_term(comps[2](position_in(in.ct.basis(2), cq.id), position_in(in.cs.basis(2), cp.id)), cp.orientation * det_sign * cq.orientation,
                     end->second[0] - shift_s(end->first));
        }
    }

    // degree 1: A(D(p)) against the translates of D(q, -v)
    const double down = order + 2 + std::max(0.0, in.lambda_s - in.lambda_t) + in.drift_hi;
    const double up = order + 3 + std::abs(in.lambda_s - in.lambda_t) + std::max(std::abs(in.drift_lo), std::abs(in.drift_hi));
    std::vector<flow::Polyline> ascending;
    for (auto q : tgt.of_index(1)) ascending.push_back(flow::disc_curve(tgt, q, Direction::Ascending, up, {shift_t(q), 0}));
    const auto qs = tgt.of_index(1);
    for (auto p : src.of_index(1)) {
        flow::Polyline image;
        for (const auto& x : flow::disc_curve(src, p, Direction::Descending, down, {shift_s(p), 0})) image.push_back(in.a.apply(x));
        for (std::size_t j = 0; j < qs.size(); ++j) {
            const auto& cq = tgt.critical(qs[j]);
            const int orient = tgt.model().det(cq.vectors[0], cq.vectors[1], cq.position) > 0 ? 1 : -1;
            for (const auto& c : flow::crossings(image, ascending[j], true))
                add_term(comps[1](position_in(in.ct.basis(1), cq.id), position_in(in.cs.basis(1), src.critical(p).id)), orient * c.sign,
                         -c.translate[0]);
        }
    }
    return comps;
}

bool vanishes(const NovikovMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) return false;
    return true;
}

} // namespace

NovikovChainMap novikov_induced_map(const morse::TorusMap& lift, const Scene& source, double lambda_source, const Scene& target,
                                    double lambda_target, int order) {
    require_circle_valued(source);
    require_circle_valued(target);
    if (lift.linear(0, 0) != 1 || lift.linear(0, 1) != 0)
        fail(ErrorCode::Config, "the lifted map must preserve the circle coordinate (first row (1, 0))");
    if (!std::isfinite(lift.offset.x())) fail(ErrorCode::LiftAmbiguity, "no lift declared for the basepoint");
    const auto cs = build_novikov_complex(source, lambda_source, order);
    const auto ct = build_novikov_complex(target, lambda_target, order);
    const auto [lo, hi] = level_drift(lift, source, target);
    const InducedInput in{lift, source, target, cs, ct, lambda_source, lambda_target, order + 1, lo, hi};
    const auto comps = gather(in, 0);
    const auto moved = gather(in, 1);
    for (int k = 0; k <= 2; ++k)
        if (!equal_to_order(comps[static_cast<std::size_t>(k)], moved[static_cast<std::size_t>(k)], order + 1))
            fail(ErrorCode::ChainMapViolation, "induced map is not t-equivariant in degree " + std::to_string(k));
    for (int k = 1; k <= 2; ++k) {
        const auto diff = ct.boundary(k) * comps[static_cast<std::size_t>(k)] - comps[static_cast<std::size_t>(k - 1)] * cs.boundary(k);
        if (!vanishes(diff)) fail(ErrorCode::ChainMapViolation, "dA != Ad in degree " + std::to_string(k));
    }
    return NovikovChainMap(cs, ct, comps);
}

} // namespace morsekit::novikov
