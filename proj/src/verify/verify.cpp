#include "morsekit/verify/verify.hpp"

#include "morsekit/flow/polyline.hpp"
#include "morsekit/homalg/torsion.hpp"
#include "morsekit/io/json.hpp"

#include <algorithm>
#include <cmath>

namespace morsekit::verify {

using flow::Direction;
using flow::Scene;
using flow::Vec3;
using rings::Integer;
using rings::NovikovSeries;

namespace {

constexpr double kClearance = 1e-7;

NovikovSeries mono(int c, int e) { return NovikovSeries::monomial(Integer(c), e); }

NovikovSeries constant(const Integer& c) { return NovikovSeries::monomial(c, 0); }

std::string cell(const char* kind, int i, int j) { return std::string(kind) + "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

std::size_t position_in(const std::vector<std::string>& basis, const std::string& id) {
    return static_cast<std::size_t>(std::find(basis.begin(), basis.end(), id) - basis.begin());
}

homalg::LaurentMatrix zero_matrix(std::size_t rows, std::size_t cols, int precision) {
    homalg::LaurentMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = NovikovSeries::zero(precision);
    return m;
}

void add_term(NovikovSeries& entry, int sign, int exponent) {
    if (exponent < entry.precision()) entry += mono(sign, exponent);
}

bool vanishes(const homalg::LaurentMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) return false;
    return true;
}

void check_chain_map(const NovikovChainMap& f) {
    for (int k = 1; k <= f.top_degree(); ++k)
        if (!vanishes(f.target().boundary(k) * f.component(k) - f.component(k - 1) * f.source().boundary(k)))
            fail(ErrorCode::ChainMapViolation, "xi is not a chain map in degree " + std::to_string(k));
}

// exponent of t for the lift of critical point i at x-shift sx, relative to the basis lift
int deck_power(const Scene& scene, std::size_t i, int sx, double lambda) { return novikov::basis_shift(scene, i, lambda) - sx; }

} // namespace

int CellStructure::euler_characteristic() const {
    int chi = 0;
    for (int k = 0; k <= complex.top_degree(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<int>(complex.rank(k));
    return chi;
}

CellStructure grid_cells(int cols, int rows, double x0, double y0) {
    if (cols < 1 || rows < 1) fail(ErrorCode::InvalidArgument, "grid needs at least one column and row");
    CellStructure c;
    c.kind = CellStructure::Kind::Grid;
    c.name = "grid" + std::to_string(cols) + "x" + std::to_string(rows);
    c.cols = cols;
    c.rows = rows;
    c.x0 = x0;
    c.y0 = y0;
    std::vector<std::vector<std::string>> bases(3);
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < rows; ++j) {
            bases[0].push_back(cell("v", i, j));
            bases[1].push_back(cell("h", i, j));
            bases[1].push_back(cell("w", i, j));
            bases[2].push_back(cell("f", i, j));
        }
    auto at = [&](const char* kind, int i, int j, int degree) {
        // column cols is column 0 of the next domain: t^-1
        const int power = i >= cols ? -1 : 0;
        i %= cols;
        j %= rows;
        return std::make_pair(position_in(bases[static_cast<std::size_t>(degree)], cell(kind, i, j)), power);
    };
    auto d1 = zero_matrix(bases[0].size(), bases[1].size(), rings::kExact);
    auto d2 = zero_matrix(bases[1].size(), bases[2].size(), rings::kExact);
    auto put = [](homalg::LaurentMatrix& m, std::pair<std::size_t, int> row, std::size_t col, int sign) { m(row.first, col) += mono(sign, row.second); };
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < rows; ++j) {
            const auto h = at("h", i, j, 1).first, w = at("w", i, j, 1).first, f = at("f", i, j, 2).first;
            put(d1, at("v", i + 1, j, 0), h, 1);
            put(d1, at("v", i, j, 0), h, -1);
            put(d1, at("v", i, j + 1, 0), w, 1);
            put(d1, at("v", i, j, 0), w, -1);
            put(d2, at("h", i, j, 1), f, 1);
            put(d2, at("w", i + 1, j, 1), f, 1);
            put(d2, at("h", i, j + 1, 1), f, -1);
            put(d2, at("w", i, j, 1), f, -1);
        }
    c.complex = homalg::NovikovComplex(bases, {d1, d2});
    c.complex.check_square_zero();
    return c;
}

CellStructure default_grid(const Scene& scene) {
    if (scene.family() != "torus_circle_valued") fail(ErrorCode::InvalidArgument, "no shipped cell structure for " + scene.family());
    return grid_cells(4, 3, 0.0137, 0.0411);
}

CellStructure fiber_cells(const zeta::MappingTorus& m, int subdivision) {
    // fiber complex and monodromy chain map over Z
    std::vector<std::vector<std::string>> fb;
    std::vector<homalg::IntMatrix> fd, fa;
    if (m.kind == zeta::MappingTorus::Kind::Linear) {
        if (subdivision != 1) fail(ErrorCode::InvalidArgument, "torus fibers carry only the minimal cell structure");
        fb = {{"v"}, {"a", "b"}, {"F"}};
        fd = {homalg::IntMatrix(1, 2), homalg::IntMatrix(2, 1)};
        homalg::IntMatrix a0(1, 1), a1(2, 2), a2(1, 1);
        a0(0, 0) = 1;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) a1(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = std::lround(m.monodromy(i, j));
        a2(0, 0) = std::lround(m.monodromy.determinant());
        fa = {a0, a1, a2};
    } else {
        const int n = subdivision;
        if (n < 1) fail(ErrorCode::InvalidArgument, "subdivision must be positive");
        fb.resize(2);
        for (int k = 0; k < n; ++k) {
            fb[0].push_back("v" + std::to_string(k));
            fb[1].push_back("e" + std::to_string(k));
        }
        const auto un = static_cast<std::size_t>(n);
        homalg::IntMatrix d(un, un), a0(un, un), a1(un, un);
        auto mod = [n](long long x) { return static_cast<std::size_t>(((x % n) + n) % n); };
        const int deg = m.degree;
        for (int k = 0; k < n; ++k) {
            const auto uk = static_cast<std::size_t>(k);
            d(mod(k + 1), uk) += 1;
            d(uk, uk) -= 1;
            a0(mod(static_cast<long long>(deg) * k), uk) = 1;
            for (int s = 0; s < std::abs(deg); ++s) {
                if (deg > 0) a1(mod(static_cast<long long>(deg) * k + s), uk) += 1;
                else a1(mod(static_cast<long long>(deg) * (k + 1) + s), uk) -= 1;
            }
        }
        fd = {d};
        fa = {a0, a1};
    }
    const int top = static_cast<int>(fb.size()) - 1;
    // cells e (degree |e|) and e x I (degree |e| + 1)
    std::vector<std::vector<std::string>> bases(static_cast<std::size_t>(top + 2));
    for (int k = 0; k <= top; ++k) {
        for (const auto& l : fb[static_cast<std::size_t>(k)]) bases[static_cast<std::size_t>(k)].push_back(l);
        for (const auto& l : fb[static_cast<std::size_t>(k)]) bases[static_cast<std::size_t>(k + 1)].push_back(l + "xI");
    }
    std::vector<homalg::LaurentMatrix> d;
    for (int k = 1; k <= top + 1; ++k) {
        const auto rows = bases[static_cast<std::size_t>(k - 1)].size(), cols = bases[static_cast<std::size_t>(k)].size();
        auto mk = zero_matrix(rows, cols, rings::kExact);
        const std::size_t fk = k <= top ? fb[static_cast<std::size_t>(k)].size() : 0;     // plain cells of degree k
        const std::size_t fk1 = fb[static_cast<std::size_t>(k - 1)].size();               // e x I with |e| = k - 1
        const std::size_t rk1 = k - 1 <= top ? fb[static_cast<std::size_t>(k - 1)].size() : 0; // plain rows
        // plain cells: fiber boundary
        if (k <= top)
            for (std::size_t i = 0; i < rk1; ++i)
                for (std::size_t j = 0; j < fk; ++j) mk(i, j) = constant(fd[static_cast<std::size_t>(k - 1)](i, j));
        // e x I, |e| = k - 1: (de) x I + (-1)^{k-1} (t A e - e)
        const int sign = (k - 1) % 2 == 0 ? 1 : -1;
        const auto& a = fa[static_cast<std::size_t>(k - 1)];
        for (std::size_t j = 0; j < fk1; ++j) {
            const std::size_t col = fk + j;
            for (std::size_t i = 0; i < rk1; ++i) {
                mk(i, col) += mono(sign, 1) * constant(a(i, j));
                if (i == j) mk(i, col) -= mono(sign, 0);
            }
            if (k >= 2) {
                const auto& de = fd[static_cast<std::size_t>(k - 2)];
                for (std::size_t i = 0; i < de.rows(); ++i) mk(rk1 + i, col) += constant(de(i, j));
            }
        }
        d.push_back(std::move(mk));
    }
    CellStructure c;
    c.kind = CellStructure::Kind::Fiber;
    c.name = (m.kind == zeta::MappingTorus::Kind::Linear ? "torus_fiber" : "circle_fiber" + std::to_string(subdivision));
    c.complex = homalg::NovikovComplex(bases, d);
    c.complex.check_square_zero();
    return c;
}

NovikovChainMap schutz_map(const Scene& scene, double lambda, const CellStructure& cells, int order) {
    if (cells.kind != CellStructure::Kind::Grid) fail(ErrorCode::InvalidArgument, "scene cells must be a grid");
    const auto nc = novikov::build_novikov_complex(scene, lambda, order);
    const int precision = order + 1;
    const auto& src = cells.complex;
    std::vector<homalg::LaurentMatrix> comps;
    for (int k = 0; k <= 2; ++k) comps.push_back(zero_matrix(nc.rank(k), src.rank(k), precision));
    const double cw = 1.0 / cells.cols, rh = 1.0 / cells.rows;
    auto corner = [&](int i, int j) { return Vec3(cells.x0 + i * cw, cells.y0 + j * rh, 0); };

    std::vector<flow::Polyline> ascending;
    for (auto q : scene.of_index(1))
        ascending.push_back(flow::disc_curve(scene, q, Direction::Ascending, order + 2.0, {novikov::basis_shift(scene, q, lambda), 0}));

    for (int i = 0; i < cells.cols; ++i)
        for (int j = 0; j < cells.rows; ++j) {
            const Vec3 p = corner(i, j);
            for (const auto& a : ascending)
                if (flow::distance_to_polyline(p, a, true) < kClearance) fail(ErrorCode::TransversalityFailure, "vertex " + cell("v", i, j) + " lies on an ascending disc");
            // vertices: the basin they descend into
            if (!scene.of_index(0).empty()) {
                flow::StopRule stop;
                stop.levels.push_back(scene.f(p) - order - 2);
                const auto s = flow::trace(scene, p, Direction::Descending, stop);
                if (s.terminus.kind == flow::TerminusKind::Critical) {
                    const auto& end = scene.critical(s.terminus.critical);
                    if (end.index != 0) fail(ErrorCode::TransversalityFailure, "vertex " + cell("v", i, j) + " flows into " + end.id);
                    add_term(comps[0](position_in(nc.basis(0), end.id), position_in(src.basis(0), cell("v", i, j))), 1,
                             deck_power(scene, s.terminus.critical, s.terminus.shift[0], lambda));
                }
            }
            // edges: crossings with ascending curves of saddles
            const std::pair<const char*, Vec3> edges[] = {{"h", corner(i + 1, j)}, {"w", corner(i, j + 1)}};
            const auto qs = scene.of_index(1);
            for (const auto& [kind, end] : edges) {
                const flow::Polyline e = {p, end};
                const auto col = position_in(src.basis(1), cell(kind, i, j));
                for (std::size_t n = 0; n < qs.size(); ++n) {
                    const auto& cq = scene.critical(qs[n]);
                    const int orient = scene.model().det(cq.vectors[0], cq.vectors[1], cq.position) > 0 ? 1 : -1;
                    for (const auto& c : flow::crossings(e, ascending[n], true))
                        add_term(comps[1](position_in(nc.basis(1), cq.id), col), orient * c.sign, -c.translate[0]);
                }
            }
            // faces: maxima inside
            const Vec3 lo = corner(i, j);
            for (auto m : scene.of_index(2)) {
                const auto& cm = scene.critical(m);
                const int sb = novikov::basis_shift(scene, m, lambda);
                const Vec3 x = scene.lift(m, {sb, 0});
                const double dx = x.x() - lo.x(), dy = x.y() - lo.y();
                const int kx = -static_cast<int>(std::floor(dx)), ky = -static_cast<int>(std::floor(dy));
                const double rx = dx + kx, ry = dy + ky;
                if (std::min({rx, ry, std::abs(rx - cw), std::abs(ry - rh)}) < kClearance)
                    fail(ErrorCode::TransversalityFailure, cm.id + " lies on the boundary of " + cell("f", i, j));
                if (rx < cw && ry < rh)
                    add_term(comps[2](position_in(nc.basis(2), cm.id), position_in(src.basis(2), cell("f", i, j))), cm.orientation, -kx);
            }
        }
    NovikovChainMap xi(src, nc, comps);
    check_chain_map(xi);
    return xi;
}

NovikovChainMap schutz_map(const zeta::MappingTorus&, const CellStructure& cells, int) {
    const auto& src = cells.complex;
    std::vector<std::vector<std::string>> empty(static_cast<std::size_t>(src.top_degree() + 1));
    return NovikovChainMap::zero(src, homalg::NovikovComplex(empty, {}));
}

rings::WittUnit torsion_w(const NovikovChainMap& xi, int order) {
    const auto cone = homalg::mapping_cone(xi);
    const auto u = homalg::torsion(cone, order + 1);
    if (u.order() < order + 1)
        fail(ErrorCode::PrecisionExhausted, "torsion known only modulo t^" + std::to_string(u.order()));
    return u.inverse();
}

namespace {

void finish(Verdict& v) {
    v.product = (*v.w * *v.zeta).truncated(v.order + 1);
    for (int k = 1; k <= v.order; ++k)
        if ((*v.product)[k] != 0) {
            v.first_mismatch = k;
            break;
        }
    v.pass = !v.first_mismatch;
}

template <class Build>
Verdict run_verdict(std::string name, int order, Build&& build) {
    Verdict v;
    v.scene = std::move(name);
    v.order = order;
    try {
        build(v);
        finish(v);
    } catch (const Error& e) {
        v.diagnostic = e.what();
        v.pass = false;
        if (e.code() == ErrorCode::DegenerateFixedPoint) v.applicable = false;
    }
    return v;
}

} // namespace

Verdict check_torsion_zeta(const Scene& scene, const CellStructure& cells, double lambda, int order) {
    return run_verdict(scene.family(), order, [&](Verdict& v) {
        v.zeta = zeta::zeta_report(zeta::ReturnMap::of_scene(scene, lambda), order).zeta;
        v.w = torsion_w(schutz_map(scene, lambda, cells, order + 4), order);
    });
}

Verdict check_torsion_zeta(const zeta::MappingTorus& m, const CellStructure& cells, double lambda, int order) {
    return run_verdict("mapping_torus", order, [&](Verdict& v) {
        v.zeta = zeta::zeta_report(zeta::ReturnMap::of_mapping_torus(m, lambda), order).zeta;
        v.w = torsion_w(schutz_map(m, cells, order), order);
    });
}

nlohmann::json to_json(const Verdict& v) {
    nlohmann::json j = {{"scene", v.scene}, {"order", v.order}, {"applicable", v.applicable}, {"pass", v.pass}};
    j["w"] = v.w ? io::witt_json(*v.w) : nlohmann::json();
    j["zeta"] = v.zeta ? io::witt_json(*v.zeta) : nlohmann::json();
    j["product"] = v.product ? io::witt_json(*v.product) : nlohmann::json();
    j["first_mismatch"] = v.first_mismatch ? nlohmann::json(*v.first_mismatch) : nlohmann::json();
    if (!v.diagnostic.empty()) j["diagnostic"] = v.diagnostic;
    return j;
}

} // namespace morsekit::verify
