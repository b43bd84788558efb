#include "morsekit/app/suite.hpp"

#include "morsekit/app/oracles.hpp"
#include "morsekit/flow/validate.hpp"
#include "morsekit/io/json.hpp"
#include "morsekit/morse/induced.hpp"
#include "morsekit/morse/morse_complex.hpp"
#include "morsekit/novikov/novikov.hpp"
#include "morsekit/verify/verify.hpp"
#include "morsekit/zeta/zeta.hpp"

#include <sstream>

namespace morsekit::app {

using nlohmann::json;
using rings::Integer;
using rings::WittUnit;

namespace {

flow::Scene circle(int k) { return flow::make_scene("torus_circle_valued", {{"k", k}}); }

zeta::MappingTorus cat_map() { return zeta::MappingTorus::from_json({{"monodromy", {{2, 1}, {1, 1}}}}); }
zeta::MappingTorus doubling() { return zeta::MappingTorus::from_json({{"circle_degree", 2}}); }

// num / den as a power series to t^order
WittUnit expansion(const std::vector<int>& num, const std::vector<int>& den, int order) {
    rings::TruncatedSeries<Integer> n(order + 1), d(order + 1);
    for (std::size_t i = 0; i < num.size() && static_cast<int>(i) <= order; ++i) n[static_cast<int>(i)] = num[i];
    for (std::size_t i = 0; i < den.size() && static_cast<int>(i) <= order; ++i) d[static_cast<int>(i)] = den[i];
    return WittUnit(n * d.inverse());
}

// 2 - tr A^n for A = [[2,1],[1,1]] via tr_{n+1} = 3 tr_n - tr_{n-1}
std::vector<long long> cat_trace_oracle(int order) {
    std::vector<long long> tr = {2, 3};
    while (static_cast<int>(tr.size()) <= order) tr.push_back(3 * tr.back() - tr[tr.size() - 2]);
    std::vector<long long> out;
    for (int n = 1; n <= order; ++n) out.push_back(2 - tr[static_cast<std::size_t>(n)]);
    return out;
}

struct Tally {
    bool pass = true;
    int checks = 0, failed = 0;
    std::string first;
    void check(bool ok, const std::string& what) {
        ++checks;
        if (ok) return;
        ++failed;
        pass = false;
        if (first.empty()) first = what;
    }
    std::string summary() const {
        std::string s = std::to_string(checks - failed) + "/" + std::to_string(checks) + " checks";
        if (!first.empty()) s += "; first failure: " + first;
        return s;
    }
};

CriterionResult validation(const RunConfig&) {
    CriterionResult r;
    Tally t;
    json scenes = json::array();
    for (const auto& name : flow::scene_families()) {
        const auto s = flow::make_scene(name);
        if (s.kind() != flow::SceneKind::RealValued) continue;
        const auto v = flow::validate_f_gradient(s);
        t.check(v.pass(), name + " gradient fails validation");
        const auto neg = flow::validate_f_gradient(s.with_field(std::make_shared<flow::ScaledField>(s.field_ptr(), -1.0)));
        t.check(!neg.condition_a(), name + " negated field passes A");
        json entry = {{"scene", name}, {"gradient", flow::to_json(v)}, {"negated_fails_a", !neg.condition_a()}};
        if (!s.of_index(1).empty()) {
            const auto q = s.of_index(1).front();
            const auto rot = flow::validate_f_gradient(s.with_field(std::make_shared<flow::RotatedSaddleField>(s, q)));
            t.check(!rot.condition_b(), name + " rotated saddle passes B");
            entry["rotated_saddle"] = s.critical(q).id;
            entry["rotated_fails_b"] = !rot.condition_b();
        }
        scenes.push_back(entry);
    }
    r.pass = t.pass;
    r.summary = t.summary();
    r.details = {{"scenes", scenes}};
    return r;
}

CriterionResult morse_homology(const RunConfig&) {
    CriterionResult r;
    Tally t;
    json out = json::array();
    const std::pair<const char*, std::vector<int>> cases[] = {
        {"sphere_height", {1, 0, 1}}, {"torus_product", {1, 2, 1}}, {"genus2_height", {1, 4, 1}}};
    for (const auto& [name, expected] : cases) {
        const auto c = morse::build_morse_complex(flow::make_scene(name));
        bool square_zero = true;
        try {
            c.check_square_zero();
        } catch (const Error&) {
            square_zero = false;
        }
        const auto h = homalg::homology(c);
        t.check(square_zero, std::string(name) + " d^2 != 0");
        t.check(h.betti == expected, std::string(name) + " betti mismatch");
        out.push_back({{"scene", name}, {"betti", h.betti}, {"expected", expected}, {"square_zero", square_zero}, {"complex", io::complex_json(c)}});
    }
    r.pass = t.pass;
    r.summary = t.summary();
    r.details = {{"scenes", out}};
    return r;
}

CriterionResult stability(const RunConfig& cfg) {
    CriterionResult r;
    Tally t;
    json out = json::array();
    for (const char* name : {"torus_product", "genus2_height"}) {
        const auto rep = morse::stability_experiment(flow::make_scene(name), cfg.delta, cfg.trials, cfg.seed);
        t.check(rep.trials == cfg.trials && rep.all_identical(),
                std::string(name) + " " + std::to_string(rep.identical) + "/" + std::to_string(rep.trials) + " identical");
        auto j = morse::to_json(rep);
        j["scene"] = name;
        out.push_back(j);
    }
    r.pass = t.pass;
    r.summary = t.summary();
    r.details = {{"delta", cfg.delta}, {"trials", cfg.trials}, {"scenes", out}};
    return r;
}

CriterionResult functoriality(const RunConfig&) {
    using QMatrix = homalg::Matrix<rings::Rational>;
    CriterionResult r;
    Tally t;
    const auto s = flow::make_scene("torus_product");
    const auto id = morse::induced_map(morse::TorusMap::identity(), s, s);
    t.check(id.is_chain_map(), "identity is not a chain map");
    for (int k = 0; k <= 2; ++k)
        t.check(id.component(k) == homalg::IntMatrix::identity(s.of_index(k).size()), "identity component " + std::to_string(k));

    const auto s2 = flow::make_scene("torus_product", {{"freq_x", 2}});
    morse::TorusMap half;
    half.offset = flow::Vec2(0.5, 0);
    const auto h = morse::induced_map(half, s2, s2);
    t.check(h.is_chain_map(), "half-shift is not a chain map");
    for (int k = 0; k <= 2; ++k) {
        const auto m = h.component(k);
        bool perm = m.rows() == m.cols();
        for (std::size_t j = 0; perm && j < m.cols(); ++j) {
            int ones = 0, other = 0;
            for (std::size_t i = 0; i < m.rows(); ++i) {
                if (m(i, j) == 1) ++ones;
                else if (m(i, j) != 0) ++other;
            }
            for (std::size_t i = 0; i < m.rows(); ++i)
                if (m(j, i) == 1) ++ones;
            perm = ones == 2 && other == 0 && m(j, j) == 0;
        }
        t.check(perm, "half-shift component " + std::to_string(k) + " is not a fixed-point-free permutation");
    }

    morse::TorusMap dbl;
    dbl.linear << 2, 0, 0, 1;
    dbl.offset = flow::Vec2(0.13, 0.07);
    const auto d = morse::induced_map(dbl, s, s);
    t.check(d.is_chain_map(), "diag(2,1) map is not a chain map");
    const auto h2 = homalg::induced_on_homology(d, 2);
    t.check(h2.rows() == 1 && h2.cols() == 1 && h2(0, 0) == 2, "diag(2,1) on H2 is not x2");
    t.check(homalg::induced_on_homology(d, 0) == QMatrix::identity(1), "diag(2,1) on H0 is not the identity");

    r.pass = t.pass;
    r.summary = t.summary();
    r.details = {{"identity", io::chain_map_json(id)}, {"half_shift", io::chain_map_json(h)}, {"diag21", io::chain_map_json(d)},
                 {"diag21_on_h2", io::matrix_json(h2)}};
    return r;
}

CriterionResult novikov_tower(const RunConfig& cfg) {
    CriterionResult r;
    Tally t;
    json out = json::array();
    for (auto [k, lambda] : {std::pair{0, 1.0}, std::pair{1, 1.0}, std::pair{2, 1.25}}) {
        const auto s = circle(k);
        const auto c = novikov::build_novikov_complex(s, lambda, cfg.order);
        const std::string tag = "k=" + std::to_string(k);
        bool square_zero = true;
        try {
            c.check_square_zero(cfg.order + 1);
        } catch (const Error&) {
            square_zero = false;
        }
        t.check(square_zero, tag + " d^2 != 0 to order " + std::to_string(cfg.order));
        json tower = json::array();
        for (int n = 1; n <= 4; ++n) {
            const auto rep = novikov::truncation_tower_check(s, lambda, n, &c);
            t.check(rep.pass(), tag + " n=" + std::to_string(n) + " " + rep.first_difference);
            tower.push_back(novikov::to_json(rep));
        }
        out.push_back({{"k", k}, {"lambda", lambda}, {"square_zero", square_zero}, {"complex", io::complex_json(c)}, {"tower", tower}});
    }
    r.pass = t.pass;
    r.summary = t.summary();
    r.details = {{"order", cfg.order}, {"scenes", out}};
    return r;
}

CriterionResult lambda_independence(const RunConfig& cfg) {
    CriterionResult r;
    Tally t;
    json out = json::array();
    for (auto [k, l0, l1] : {std::tuple{1, 1.0, 1.37}, std::tuple{2, 1.1, 1.25}}) {
        const auto s = circle(k);
        const std::string tag = "k=" + std::to_string(k);
        const auto a = novikov::build_novikov_complex(s, l0, cfg.order), b = novikov::build_novikov_complex(s, l1, cfg.order);
        const bool same = basis_preserving_equal(a, b, cfg.order + 1);
        t.check(same, tag + " boundaries differ");
        const auto za = zeta::zeta_report(zeta::ReturnMap::of_scene(s, l0), cfg.order);
        const auto zb = zeta::zeta_report(zeta::ReturnMap::of_scene(s, l1), cfg.order);
        t.check(za.counts == zb.counts && za.zeta == zb.zeta, tag + " zeta differs");
        out.push_back({{"k", k}, {"lambdas", {l0, l1}}, {"boundaries_equal", same}, {"zeta", {io::witt_json(za.zeta), io::witt_json(zb.zeta)}}});
    }
    r.pass = t.pass;
    r.summary = t.summary();
    r.details = {{"order", cfg.order}, {"scenes", out}};
    return r;
}

CriterionResult zeta_oracle(const RunConfig& cfg) {
    CriterionResult r;
    Tally t;
    const auto cat = zeta::zeta_report(zeta::ReturnMap::of_mapping_torus(cat_map(), 0.3), cfg.order);
    const auto oracle = cat_trace_oracle(cfg.order);
    t.check(cat.counts == oracle, "cat-map counts differ from the trace recurrence");
    t.check(cat.zeta == expansion({1, -3, 1}, {1, -2, 1}, cfg.order), "cat-map zeta differs from (1-3t+t^2)/(1-t)^2");
    const auto circ = zeta::zeta_report(zeta::ReturnMap::of_mapping_torus(doubling(), 0.3), cfg.order);
    t.check(circ.zeta == expansion({1, -2}, {1, -1}, cfg.order), "degree-2 zeta differs from (1-2t)/(1-t)");
    r.pass = t.pass;
    r.summary = t.summary();
    r.details = {{"cat_map", zeta::to_json(cat)}, {"trace_oracle", oracle}, {"degree2", zeta::to_json(circ)}};
    return r;
}

CriterionResult torsion_zeta(const RunConfig& cfg) {
    CriterionResult r;
    Tally t;
    const auto cat = cat_map(), dbl = doubling();
    const auto s = circle(1);
    const verify::Verdict verdicts[] = {verify::check_torsion_zeta(cat, verify::fiber_cells(cat), 0.3, cfg.order),
                                        verify::check_torsion_zeta(dbl, verify::fiber_cells(dbl), 0.3, cfg.order),
                                        verify::check_torsion_zeta(s, verify::default_grid(s), 1.0, cfg.order)};
    const char* names[] = {"cat_map", "degree2_circle", "torus_circle_valued"};
    json out = json::object();
    for (std::size_t i = 0; i < 3; ++i) {
        t.check(verdicts[i].pass, std::string(names[i]) + (verdicts[i].diagnostic.empty() ? "" : ": " + verdicts[i].diagnostic));
        out[names[i]] = verify::to_json(verdicts[i]);
    }
    r.pass = t.pass;
    r.summary = t.summary();
    r.details = out;
    return r;
}

CriterionResult algebra(const RunConfig& cfg) {
    CriterionResult r;
    Tally t;
    json out = json::array();
    for (const auto& p : algebra_properties(cfg.seed)) {
        t.check(p.pass(), p.name + " " + p.first_failure);
        out.push_back(to_json(p));
    }
    r.pass = t.pass;
    r.summary = t.summary();
    r.details = {{"properties", out}};
    return r;
}

} // namespace

std::vector<std::string> criterion_names() {
    return {"validation", "morse_homology", "stability", "functoriality", "novikov_tower", "lambda_independence", "zeta_oracle", "torsion_zeta",
            "algebra", "determinism"};
}

CriterionResult run_criterion(int id, const RunConfig& config) {
    using Fn = CriterionResult (*)(const RunConfig&);
    static const Fn table[] = {validation, morse_homology, stability, functoriality, novikov_tower, lambda_independence, zeta_oracle, torsion_zeta, algebra};
    if (id < 1 || id > 9) fail(ErrorCode::InvalidArgument, "criterion " + std::to_string(id) + " is not runnable on its own");
    CriterionResult r;
    try {
        r = table[id - 1](config);
    } catch (const Error& e) {
        r.pass = false;
        r.summary = std::string(to_string(e.code())) + ": " + e.what();
        r.details = {{"error", to_string(e.code())}, {"message", e.what()}};
    }
    r.id = id;
    r.name = criterion_names()[static_cast<std::size_t>(id - 1)];
    return r;
}

bool SuiteReport::pass() const {
    for (const auto& c : criteria)
        if (!c.pass) return false;
    return !criteria.empty();
}

SuiteReport run_suite(const RunConfig& config, bool determinism) {
    auto run = [&] {
        SuiteReport r;
        r.config = to_json(config);
        for (int id = 1; id <= 9; ++id) r.criteria.push_back(run_criterion(id, config));
        return r;
    };
    SuiteReport first = run();
    if (!determinism) return first;
    const std::string a = to_json(first).dump(2), b = to_json(run()).dump(2);
    CriterionResult d;
    d.id = 10;
    d.name = "determinism";
    d.pass = a == b;
    std::size_t at = 0;
    while (at < a.size() && at < b.size() && a[at] == b[at]) ++at;
    d.summary = d.pass ? "2 runs, " + std::to_string(a.size()) + " identical bytes" : "reports differ at byte " + std::to_string(at);
    d.details = {{"runs", 2}, {"bytes", a.size()}, {"identical", d.pass}};
    first.criteria.push_back(d);
    return first;
}

json to_json(const CriterionResult& r) {
    return {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"summary", r.summary}, {"details", r.details}};
}

json to_json(const SuiteReport& r) {
    json c = json::array();
    for (const auto& x : r.criteria) c.push_back(to_json(x));
    return {{"config", r.config}, {"criteria", c}, {"pass", r.pass()}};
}

std::string summary_line(const CriterionResult& r) {
    std::ostringstream s;
    s << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": " << r.summary;
    return s.str();
}

} // namespace morsekit::app
