#include "morsekit/app/suite.hpp"
#include "morsekit/flow/validate.hpp"
#include "morsekit/io/json.hpp"
#include "morsekit/morse/induced.hpp"
#include "morsekit/morse/morse_complex.hpp"
#include "morsekit/novikov/novikov.hpp"
#include "morsekit/verify/verify.hpp"
#include "morsekit/zeta/zeta.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace morsekit;
using nlohmann::json;

namespace {

struct Extra {
    std::string map;
    std::string target;
    std::optional<double> target_lambda;
    int levels = 4;
    int subdivision = 1;
    bool csv = false;
};

struct Outcome {
    std::string name;
    json result;
    std::string summary;
    bool pass = false;
    std::string csv;
};

json parse_inline_or_file(const std::string& text) {
    if (std::filesystem::is_regular_file(text)) {
        std::ifstream in(text);
        try {
            return json::parse(in);
        } catch (const json::exception& e) {
            fail(ErrorCode::Config, "cannot parse " + text + ": " + e.what());
        }
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::Config, "--map is neither a file nor JSON: " + std::string(e.what()));
    }
}

const flow::Scene& need_flow(const app::LoadedScene& s) {
    if (!s.scene) fail(ErrorCode::Config, "this command needs a flow scene, not " + s.family());
    return *s.scene;
}

morse::TorusMap need_map(const Extra& x) {
    if (x.map.empty()) fail(ErrorCode::Config, "--map is required");
    return morse::TorusMap::from_json(parse_inline_or_file(x.map));
}

std::string pass_word(bool b) { return b ? "pass" : "FAIL"; }

std::string series_line(const rings::NovikovSeries& s) { return rings::to_string(s); }

Outcome do_validate(const app::LoadedScene& ls) {
    const auto r = flow::validate_f_gradient(need_flow(ls));
    std::ostringstream s;
    s << "condition A: " << pass_word(r.condition_a()) << " (" << r.samples << " samples, min f'(v) = " << r.a_min << ")\n";
    for (const auto& c : r.b_checks) s << "condition B at " << c.id << ": " << pass_word(c.pass) << " (min eigenvalue " << c.min_eigenvalue << ")\n";
    return {"validate", flow::to_json(r), s.str(), r.pass(), ""};
}

Outcome do_morse_build(const app::LoadedScene& ls) {
    const auto b = morse::build_morse(need_flow(ls));
    const auto h = homalg::homology(b.complex);
    std::ostringstream s;
    s << "degree  generators  betti  torsion\n";
    for (int k = 0; k <= b.complex.top_degree(); ++k) {
        std::string tors;
        for (const auto& t : h.torsion[static_cast<std::size_t>(k)]) tors += (tors.empty() ? "Z/" : " Z/") + t.str();
        s << std::setw(6) << k << std::setw(12) << b.complex.rank(k) << std::setw(7) << h.betti[static_cast<std::size_t>(k)] << "  "
          << (tors.empty() ? "-" : tors) << "\n";
    }
    json res = {{"complex", io::complex_json(b.complex)}, {"homology", io::homology_json(h)}, {"separatrices", b.separatrices.size()}};
    return {"morse_build", res, s.str(), true, ""};
}

Outcome do_morse_stability(const app::LoadedScene& ls, const app::RunConfig& cfg) {
    const auto r = morse::stability_experiment(need_flow(ls), cfg.delta, cfg.trials, cfg.seed);
    std::ostringstream s;
    s << "delta " << cfg.delta << ": " << r.identical << "/" << r.trials << " trials identical\n";
    for (const auto& t : r.details)
        if (!t.identical) s << "  seed " << t.seed << ": " << t.detail << "\n";
    return {"morse_stability", morse::to_json(r), s.str(), r.all_identical(), ""};
}

Outcome do_morse_induced(const app::LoadedScene& ls, const app::RunConfig& cfg, const Extra& x) {
    const auto a = need_map(x);
    const auto& src = need_flow(ls);
    const auto tgt = x.target.empty() ? ls : app::load_scene(x.target, cfg.tolerance_scale);
    const auto f = morse::induced_map(a, src, need_flow(tgt));
    const bool chain = f.is_chain_map();
    json on_h = json::array();
    std::ostringstream s;
    s << "chain map: " << pass_word(chain) << "\n";
    for (int k = 0; k <= f.top_degree(); ++k) {
        const auto m = homalg::induced_on_homology(f, k);
        on_h.push_back(io::matrix_json(m));
        s << "H" << k << ":";
        for (std::size_t i = 0; i < m.rows(); ++i) {
            s << (i ? " |" : "");
            for (std::size_t j = 0; j < m.cols(); ++j) s << " " << m(i, j);
        }
        s << "\n";
    }
    json res = {{"map", a.to_json()}, {"target", tgt.spec}, {"chain_map", io::chain_map_json(f)}, {"on_homology", on_h}};
    return {"morse_induced", res, s.str(), chain, ""};
}

Outcome do_novikov_build(const app::LoadedScene& ls, const app::RunConfig& cfg) {
    const double lambda = ls.lambda(cfg);
    const auto c = novikov::build_novikov_complex(need_flow(ls), lambda, cfg.order);
    c.check_square_zero(cfg.order + 1);
    const auto h = homalg::novikov_homology(c);
    std::ostringstream s;
    s << "lambda " << lambda << ", order " << cfg.order << "\n";
    for (int k = 1; k <= c.top_degree(); ++k) {
        const auto d = c.boundary(k);
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t j = 0; j < d.cols(); ++j)
                if (!d(i, j).is_zero()) s << "d" << k << "(" << c.basis(k - 1)[i] << ", " << c.basis(k)[j] << ") = " << series_line(d(i, j)) << "\n";
    }
    s << "novikov betti:";
    for (int r : h.ranks) s << " " << r;
    s << "\n";
    json res = {{"lambda", lambda}, {"order", cfg.order}, {"complex", io::complex_json(c)}, {"homology", io::homology_json(h)}};
    return {"novikov_build", res, s.str(), true, ""};
}

Outcome do_novikov_tower(const app::LoadedScene& ls, const app::RunConfig& cfg, const Extra& x) {
    const double lambda = ls.lambda(cfg);
    const auto& scene = need_flow(ls);
    const auto c = novikov::build_novikov_complex(scene, lambda, cfg.order);
    json reps = json::array();
    bool ok = true;
    std::ostringstream s;
    for (int n = 1; n <= x.levels; ++n) {
        const auto r = novikov::truncation_tower_check(scene, lambda, n, &c);
        ok = ok && r.pass();
        reps.push_back(novikov::to_json(r));
        s << "n = " << n << ": boundaries " << pass_word(r.boundaries_equal) << ", homology " << pass_word(r.homology_equal)
          << (r.first_difference.empty() ? "" : " (" + r.first_difference + ")") << "\n";
    }
    return {"novikov_tower_check", {{"lambda", lambda}, {"order", cfg.order}, {"levels", reps}}, s.str(), ok, ""};
}

Outcome do_novikov_induced(const app::LoadedScene& ls, const app::RunConfig& cfg, const Extra& x) {
    const auto a = need_map(x);
    const double lambda = ls.lambda(cfg);
    const auto tgt = x.target.empty() ? ls : app::load_scene(x.target, cfg.tolerance_scale);
    const double lt = x.target_lambda ? *x.target_lambda : tgt.lambda(cfg);
    const auto f = novikov::novikov_induced_map(a, need_flow(ls), lambda, need_flow(tgt), lt, cfg.order);
    std::ostringstream s;
    for (int k = 0; k <= f.top_degree(); ++k) {
        const auto m = f.component(k);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!m(i, j).is_zero())
                    s << "F" << k << "(" << f.target().basis(k)[i] << ", " << f.source().basis(k)[j] << ") = " << series_line(m(i, j)) << "\n";
    }
    json res = {{"map", a.to_json()}, {"lambda", lambda}, {"target", tgt.spec}, {"target_lambda", lt}, {"chain_map", io::chain_map_json(f)}};
    return {"novikov_induced", res, s.str(), true, ""};
}

Outcome do_zeta(const app::LoadedScene& ls, const app::RunConfig& cfg, const Extra& x) {
    const double lambda = ls.lambda(cfg);
    const auto rm = ls.torus ? zeta::ReturnMap::of_mapping_torus(*ls.torus, lambda) : zeta::ReturnMap::of_scene(need_flow(ls), lambda);
    const auto r = zeta::zeta_report(rm, cfg.order);
    std::ostringstream s;
    s << "   n   L(Phi^n)   fixed points\n";
    for (int n = 1; n <= cfg.order; ++n) {
        int found = 0;
        for (const auto& p : r.fixed_points)
            if (p.n == n) ++found;
        s << std::setw(4) << n << std::setw(11) << r.counts[static_cast<std::size_t>(n - 1)] << std::setw(15) << found << "\n";
    }
    s << "zeta = " << rings::to_string(r.zeta) << "\n";
    return {"zeta", zeta::to_json(r, x.csv), s.str(), true, x.csv ? zeta::fixed_points_csv(r) : ""};
}

Outcome do_verify(const app::LoadedScene& ls, const app::RunConfig& cfg, const Extra& x) {
    const double lambda = ls.lambda(cfg);
    const auto v = ls.torus ? verify::check_torsion_zeta(*ls.torus, verify::fiber_cells(*ls.torus, x.subdivision), lambda, cfg.order)
                            : verify::check_torsion_zeta(*ls.scene, verify::default_grid(*ls.scene), lambda, cfg.order);
    std::ostringstream s;
    if (v.w) s << "w       = " << rings::to_string(*v.w) << "\n";
    if (v.zeta) s << "zeta    = " << rings::to_string(*v.zeta) << "\n";
    if (v.product) s << "w*zeta  = " << rings::to_string(*v.product) << "\n";
    if (!v.applicable) s << "not applicable\n";
    if (!v.diagnostic.empty()) s << v.diagnostic << "\n";
    if (v.first_mismatch) s << "first mismatch at t^" << *v.first_mismatch << "\n";
    s << "verdict: " << pass_word(v.pass) << "\n";
    return {"verify_torsion_zeta", verify::to_json(v), s.str(), v.pass, ""};
}

Outcome do_suite(const app::RunConfig& cfg) {
    const auto r = app::run_suite(cfg);
    std::ostringstream s;
    for (const auto& c : r.criteria) s << app::summary_line(c) << "\n";
    auto j = app::to_json(r);
    return {"suite", j.at("criteria"), s.str(), r.pass(), ""};
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) fail(ErrorCode::Config, "cannot write " + p.string());
    out << text;
}

int emit(const Outcome& o, const app::RunConfig& cfg, const json& scene) {
    const std::filesystem::path dir = app::output_dir(cfg);
    std::filesystem::create_directories(dir);
    json report = {{"command", o.name}, {"config", app::to_json(cfg)}, {"result", o.result}, {"pass", o.pass}};
    if (!scene.is_null()) report["scene"] = scene;
    write_file(dir / (o.name + ".json"), report.dump(2) + "\n");
    write_file(dir / (o.name + ".txt"), o.summary);
    if (!o.csv.empty()) write_file(dir / (o.name + "_fixed_points.csv"), o.csv);
    std::cout << o.summary << (o.pass ? "PASS" : "FAIL") << " -> " << (dir / (o.name + ".json")).string() << "\n";
    return o.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Morse, Novikov and Lefschetz zeta computations on surface scenes"};
    cli.require_subcommand(1);
    cli.fallthrough();

    app::RunConfig cfg;
    Extra x;
    double lambda = 0;
    cli.add_option("--scene", cfg.scene, "scene family name or scene JSON file");
    auto* lambda_opt = cli.add_option("--lambda", lambda, "regular value for circle-valued scenes");
    cli.add_option("--order", cfg.order, "series order N (coefficients t^0..t^N)")->check(CLI::Range(1, 64));
    cli.add_option("--delta", cfg.delta, "perturbation size")->check(CLI::PositiveNumber);
    cli.add_option("--trials", cfg.trials, "perturbation trials")->check(CLI::Range(1, 100000));
    cli.add_option("--seed", cfg.seed, "random seed");
    cli.add_option("--out", cfg.out, "output directory (default $MORSEKIT_OUT or ./morsekit-out)");
    cli.add_option("--tolerance-scale", cfg.tolerance_scale, "multiplier for the integration tolerance")->check(CLI::PositiveNumber);

    auto* validate = cli.add_subcommand("validate", "check the f-gradient conditions");
    auto* morse_cmd = cli.add_subcommand("morse", "Morse complexes of real-valued scenes");
    morse_cmd->require_subcommand(1);
    auto* morse_build = morse_cmd->add_subcommand("build", "build the Morse complex and its homology");
    auto* morse_stab = morse_cmd->add_subcommand("stability", "compare complexes under seeded perturbations");
    auto* morse_ind = morse_cmd->add_subcommand("induced", "chain map induced by an affine torus map");
    auto* nov = cli.add_subcommand("novikov", "Novikov complexes of circle-valued scenes");
    nov->require_subcommand(1);
    auto* nov_build = nov->add_subcommand("build", "build the Novikov complex");
    auto* nov_tower = nov->add_subcommand("tower-check", "compare truncations with cobordism Morse complexes");
    auto* nov_ind = nov->add_subcommand("induced", "chain map induced by a lifted torus map");
    auto* zeta_cmd = cli.add_subcommand("zeta", "Lefschetz zeta function of the return map");
    auto* ver = cli.add_subcommand("verify", "torsion checks");
    ver->require_subcommand(1);
    auto* ver_tz = ver->add_subcommand("torsion-zeta", "check w * zeta = 1");
    auto* suite = cli.add_subcommand("suite", "run the acceptance battery");

    for (auto* sub : {morse_ind, nov_ind}) {
        sub->add_option("--map", x.map, "affine map JSON {linear, offset} or file")->required();
        sub->add_option("--target", x.target, "target scene (default: the source)");
    }
    nov_ind->add_option("--target-lambda", x.target_lambda, "regular value on the target");
    nov_tower->add_option("--levels", x.levels, "check n = 1..levels")->check(CLI::Range(1, 16));
    zeta_cmd->add_flag("--csv", x.csv, "also write fixed-point locations as CSV");
    ver_tz->add_option("--subdivision", x.subdivision, "vertices per circle fiber")->check(CLI::Range(1, 64));
    for (auto* sub : {validate, morse_cmd, morse_build, morse_stab, morse_ind, nov, nov_build, nov_tower, nov_ind, zeta_cmd, ver, ver_tz, suite})
        sub->fallthrough();

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return cli.exit(e);
    }
    if (*lambda_opt) cfg.lambda = lambda;

    try {
        if (suite->parsed()) {
            if (cfg.scene.empty()) cfg.scene = "suite";
            return emit(do_suite(cfg), cfg, json());
        }
        if (cfg.scene.empty()) fail(ErrorCode::Config, "--scene is required");
        const auto ls = app::load_scene(cfg.scene, cfg.tolerance_scale);
        Outcome o;
        if (validate->parsed()) o = do_validate(ls);
        else if (morse_build->parsed()) o = do_morse_build(ls);
        else if (morse_stab->parsed()) o = do_morse_stability(ls, cfg);
        else if (morse_ind->parsed()) o = do_morse_induced(ls, cfg, x);
        else if (nov_build->parsed()) o = do_novikov_build(ls, cfg);
        else if (nov_tower->parsed()) o = do_novikov_tower(ls, cfg, x);
        else if (nov_ind->parsed()) o = do_novikov_induced(ls, cfg, x);
        else if (zeta_cmd->parsed()) o = do_zeta(ls, cfg, x);
        else if (ver_tz->parsed()) o = do_verify(ls, cfg, x);
        return emit(o, cfg, ls.spec);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
