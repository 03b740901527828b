#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "unmate/reference_curves.hpp"
#include "unmate/render.hpp"
#include "unmate/report.hpp"

using namespace unmate;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
    std::string subcommand;
    std::string action;  // semigroup action or figure tag
    std::string map;
    std::string curve;
    int level = 1;
    int depth = 4;
    int generation = 4;
    int k = 4;
    std::string gens;
    int resolution = 512;
    int image_resolution = 512;
    bool basins = true;
    bool list = false;
    int pairs = 20;
    std::string out_dir = ".";
    unsigned workers = 0;
    unsigned long long seed = 20240611ULL;
    ToleranceConfig tol;

    Json to_json() const {
        Json j;
        j["subcommand"] = subcommand;
        j["action"] = action;
        j["map"] = map;
        j["curve"] = curve;
        j["level"] = level;
        j["depth"] = depth;
        j["generation"] = generation;
        j["k"] = k;
        j["gens"] = gens;
        j["resolution"] = resolution;
        j["image_resolution"] = image_resolution;
        j["basins"] = basins;
        j["list"] = list;
        j["pairs"] = pairs;
        j["out_dir"] = out_dir;
        j["workers"] = workers;
        j["seed"] = seed;
        j["eps_root"] = tol.eps_root;
        j["eps_orbit"] = tol.eps_orbit;
        j["eps_curve"] = tol.eps_curve;
        j["max_iter"] = tol.max_iter;
        j["max_refine_depth"] = tol.max_refine_depth;
        return j;
    }

    void load(const Json& j) {
        auto get = [&](const char* key, auto& v) {
            if (j.contains(key) && !j[key].is_null()) j[key].get_to(v);
        };
        get("subcommand", subcommand);
        get("action", action);
        get("map", map);
        get("curve", curve);
        get("level", level);
        get("depth", depth);
        get("generation", generation);
        get("k", k);
        get("gens", gens);
        get("resolution", resolution);
        get("image_resolution", image_resolution);
        get("basins", basins);
        get("list", list);
        get("pairs", pairs);
        get("out_dir", out_dir);
        get("workers", workers);
        get("seed", seed);
        get("eps_root", tol.eps_root);
        get("eps_orbit", tol.eps_orbit);
        get("eps_curve", tol.eps_curve);
        get("max_iter", tol.max_iter);
        get("max_refine_depth", tol.max_refine_depth);
    }
};

struct RunResult {
    Json body;
    int code = 0;
    std::string name;  // report file stem
};

std::string stem(std::string s) {
    for (auto& c : s)
        if (c == ':' ) c = '-';
        else if (c == '/' || c == ' ' || c == '{' || c == '}' || c == '"') c = '_';
    return s;
}

void need(const std::string& v, const char* flag) {
    if (v.empty()) throw Error(ErrorKind::Usage, std::string("missing required ") + flag);
}

RunResult run_orbits(const RunConfig& c) {
    need(c.map, "--map");
    auto m = resolve_map(c.map);
    auto pc = postcritical_set(m.map, c.tol);
    RunResult o{postcritical_to_json(pc), 0, "orbits_" + stem(m.id)};
    o.body["map"] = m.id;
    o.body["degree"] = m.map.degree();
    if (m.catalog) {
        auto e = catalog_entry(m.id);
        auto g = match_expected_graph(e, pc, c.tol.eps_orbit);
        o.body["expected_graph"] = g.ok;
        o.body["max_point_error"] = g.max_point_error;
        if (!g.ok) {
            o.body["mismatch"] = g.detail;
            o.code = 1;
        }
    }
    return o;
}

RunResult run_partitions(const RunConfig& c) {
    need(c.map, "--map");
    auto m = resolve_map(c.map);
    auto pc = postcritical_set(m.map, c.tol);
    Json rows = Json::array();
    for (auto& b : enumerate_bipartitions(pc.set)) {
        auto d = partition_dynamics(pc.graph, b, c.depth);
        Json r;
        r["partition"] = b.to_string(pc.set);
        Json st = Json::array();
        for (auto s : d.status) st.push_back(dyn_status_name(s));
        r["status"] = st;
        rows.push_back(r);
    }
    RunResult o{Json::object(), 0, "partitions_" + stem(m.id)};
    o.body["map"] = m.id;
    o.body["postcritical"] = postcritical_to_json(pc)["postcritical"];
    o.body["partitions"] = rows;
    return o;
}

RunResult run_lift(const RunConfig& c) {
    need(c.map, "--map");
    need(c.curve, "--curve");
    auto m = resolve_map(c.map);
    auto curve = resolve_curve(c.curve, c.resolution);
    auto pc = postcritical_set(m.map, c.tol);
    auto res = lift(IterateSpec{m.map, c.level}, curve, c.tol, pc.set.points);
    RunResult o{Json::object(), 0, "lift_" + stem(m.id) + "_" + stem(curve.name) + "_n" + std::to_string(c.level)};
    o.body["map"] = m.id;
    o.body["curve"] = curve.name;
    o.body["level"] = c.level;
    o.body["components"] = res.curves.components.size();
    o.body["covering_degrees"] = res.covering_degrees;
    o.body["branch_permutation"] = res.branch_permutation;
    o.body["refinements"] = res.refinements;
    Json comps = Json::array();
    for (auto& k : res.curves.components) comps.push_back(curve_to_json(k));
    fs::create_directories(c.out_dir);
    std::string file = (fs::path(c.out_dir) / (o.name + "_curves.json")).string();
    std::ofstream(file) << comps.dump() << '\n';
    o.body["curves_file"] = fs::path(file).filename().string();
    return o;
}

RunResult run_classify(const RunConfig& c) {
    need(c.map, "--map");
    need(c.curve, "--curve");
    auto m = resolve_map(c.map);
    auto curve = resolve_curve(c.curve, c.resolution);
    auto pc = postcritical_set(m.map, c.tol);
    auto v = classify_curve(m.map, c.level, curve, c.tol, &pc);
    RunResult o{verdict_to_json(v, pc.set), 0, "classify_" + stem(m.id) + "_" + stem(curve.name) + "_n" + std::to_string(c.level)};
    o.body["map"] = m.id;
    o.body["curve"] = curve.name;
    o.code = v.outcome == unmate::Outcome::Equator || v.outcome == unmate::Outcome::OREquator ? 0 : 1;
    return o;
}

RunResult run_fold(const RunConfig& c) {
    need(c.map, "--map");
    auto m = resolve_map(c.map);
    FoldOptions fo;
    fo.resolution = c.resolution;
    fo.map_id = m.id;
    if (!c.curve.empty()) fo.curves.push_back(resolve_curve(c.curve, c.resolution));
    if (m.catalog)
        for (auto& k : reference_curves_for(m.id, c.resolution)) fo.curves.push_back(k);
    auto rep = fold_report(m.map, c.depth, fo, c.tol);
    auto pc = postcritical_set(m.map, c.tol);
    RunResult o{report_to_json(rep, pc.set), rep.conclusion == Conclusion::MatingAtFold ? 0 : 1,
              "fold_" + stem(m.id) + "_N" + std::to_string(c.depth)};
    return o;
}

RunResult run_captures(const RunConfig& c) {
    auto roots = capture_parameters(c.generation, c.tol);
    RunResult o{Json::object(), 0, "captures_g" + std::to_string(c.generation)};
    o.body["generation"] = c.generation;
    o.body["count"] = roots.size();
    o.body["equation"] = capture_equation(c.generation).to_string();
    Json r = Json::array();
    for (auto a : roots) {
        Json e;
        e["a"] = cplx_to_json(a);
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.20g%+.20gi", a.real(), a.imag());
        e["text"] = buf;
        r.push_back(e);
    }
    o.body["parameters"] = r;
    return o;
}

std::vector<FiniteSelfMap> parse_gens(const std::string& s, int k) {
    std::vector<FiniteSelfMap> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        auto a = item.find_first_not_of(' '), b = item.find_last_not_of(' ');
        if (a == std::string::npos) continue;
        item = item.substr(a, b - a + 1);
        try {
            out.push_back(named_map(item));
        } catch (const Error&) {
            out.push_back(FiniteSelfMap::parse(item, k));
        }
    }
    if (out.empty()) throw Error(ErrorKind::Usage, "--gens needs maps separated by ';', e.g. \"P|1;P||A1\"");
    return out;
}

RunResult run_semigroup(const RunConfig& c) {
    const std::string a = c.action.empty() ? "census" : c.action;
    RunResult o{Json::object(), 0, "semigroup_" + a};
    o.body["action"] = a;
    if (a == "census") {
        auto rows = census(c.k);
        Json r = Json::array();
        for (auto& x : rows) r.push_back({{"family", x.family}, {"series", x.series}, {"count", x.count}});
        o.body["rows"] = r;
        fs::create_directories(c.out_dir);
        std::string file = (fs::path(c.out_dir) / "semigroup_census.csv").string();
        std::ofstream(file) << census_csv(rows);
        o.body["csv"] = fs::path(file).filename().string();
    } else if (a == "closure") {
        auto cl = closure(parse_gens(c.gens, c.k));
        o.body["closure"] = closure_to_json(cl, c.list);
    } else if (a == "classify") {
        Json r = Json::array();
        for (auto& f : parse_gens(c.gens, c.k)) {
            auto s = classify_series(f);
            r.push_back({{"map", f.to_string()}, {"series", s.name}, {"structure", s.canonical}, {"periodic", is_periodic(f)}});
        }
        o.body["maps"] = r;
    } else if (a == "verify-theorems") {
        if (c.k != 4) throw Error(ErrorKind::Usage, "verify-theorems covers k = 4 only");
        const std::vector<int> expected{6, 8, 3, 6, 1, 24, 24, 12, 12, 24, 24, 12, 4, 24, 24, 12, 12, 12, 12};
        auto rows = census(4);
        bool census_ok = rows.size() == expected.size();
        int periodic = 0, total = 0;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i < expected.size() && rows[i].count != expected[i]) census_ok = false;
            total += rows[i].count;
            if (rows[i].family == "periodic") periodic += rows[i].count;
        }
        census_ok = census_ok && total == 256 && periodic == 24;
        auto c24 = closure({named_map("P|1"), named_map("P||A1")});
        auto c256 = closure({named_map("P|1"), named_map("P||A1"), named_map("S|A1")});
        auto sa = verify_sa_generating();
        auto ps = exhaustive_pair_search(4);
        Json checks = Json::array();
        auto add = [&](const char* name, bool ok, Json detail) {
            checks.push_back({{"check", name}, {"pass", ok}, {"detail", detail}});
            if (!ok) o.code = 1;
        };
        add("census", census_ok, {{"total", total}, {"periodic", periodic}, {"strictly_preperiodic", total - periodic}});
        add("periodic-closure", c24.size() == 24 && c24.closed, closure_to_json(c24));
        add("full-closure", c256.size() == 256 && c256.closed, closure_to_json(c256));
        add("sa-generating", sa.result.size() == 232 && sa.result.closed && sa.chosen.size() == 12,
            {{"size", sa.result.size()}, {"chosen", sa.chosen.size()}, {"selections_tried", sa.selections_tried}});
        add("no-two-generator-set", !ps.any_full, {{"pairs_tested", ps.pairs_tested}, {"largest", ps.largest}});
        o.body["checks"] = checks;
    } else {
        throw Error(ErrorKind::Usage, "semigroup action must be census, closure, classify or verify-theorems");
    }
    return o;
}

RunResult run_realize(const RunConfig& c) {
    RunResult o{Json::object(), 0, "realize-check"};
    Json rows = Json::array();
    for (auto& e : full_catalog()) {
        if (!c.map.empty() && e.name != catalog_entry(c.map).name) continue;
        Json r;
        r["id"] = e.name;
        try {
            auto pc = postcritical_set(e.map, c.tol);
            auto g = match_expected_graph(e, pc, c.tol.eps_orbit);
            r["match"] = g.ok;
            r["max_point_error"] = g.max_point_error;
            if (!g.ok) {
                r["detail"] = g.detail;
                o.code = 1;
            }
        } catch (const Error& ex) {
            r["match"] = false;
            r["detail"] = ex.what();
            o.code = 1;
        }
        rows.push_back(r);
    }
    o.body["catalog"] = rows;
    if (c.pairs > 0) {
        auto s = compositive_survey(c.pairs, c.seed, c.tol);
        Json p = Json::array();
        for (auto& x : s.sampled) {
            Json r;
            r["first"] = x.first;
            r["second"] = x.second;
            if (!x.error.empty()) {
                r["error"] = x.error;
                o.code = 1;
            } else {
                r["containment"] = x.report.containment;
                r["hypothesis"] = x.report.hypothesis;
                r["equality"] = x.report.equality;
                Json pts = Json::array();
                for (auto& q : x.report.p12) pts.push_back(format_point(q));
                r["postcritical"] = pts;
                if (!x.report.containment) o.code = 1;
            }
            p.push_back(r);
        }
        o.body["compositive"] = {{"eligible_pairs", s.eligible}, {"sampled", p}};
    }
    return o;
}

RunResult run_figure(const RunConfig& c) {
    need(c.action, "figure tag");
    std::vector<std::string> tags;
    if (c.action == "all") tags = figure_tags();
    else tags = {c.action};
    RunResult o{Json::object(), 0, "figure_" + c.action};
    Json figs = Json::array();
    for (auto& t : tags) {
        auto spec = figure_spec(t);
        spec.render.resolution = c.image_resolution;
        spec.render.workers = c.workers;
        spec.basins = c.basins;
        if (!c.map.empty() && c.action != "all") spec.map_id = catalog_entry(c.map).name;
        auto side = Json::parse(render_figure(spec, c.out_dir, c.resolution, c.tol));
        figs.push_back(side);
    }
    o.body["figures"] = figs;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    // config file first, then the environment, then explicit flags
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        std::string path;
        if (a == "--config" && i + 1 < argc) path = argv[i + 1];
        else if (a.rfind("--config=", 0) == 0) path = a.substr(9);
        if (path.empty()) continue;
        std::ifstream in(path);
        if (!in) {
            std::cerr << "error: cannot read config " << path << "\n";
            return 2;
        }
        try {
            Json j = Json::parse(in);
            cfg.load(j.contains("config") ? j["config"] : j);
        } catch (const std::exception& e) {
            std::cerr << "error: config " << path << ": " << e.what() << "\n";
            return 2;
        }
    }
    if (const char* env = std::getenv("UNMATE_OUT_DIR"); env && *env) cfg.out_dir = env;

    CLI::App app{"unmate: n-mating analysis of postcritically finite rational maps"};
    app.require_subcommand(0, 1);
    app.fallthrough();
    std::string config_path;
    bool quiet = false;
    app.add_option("--config", config_path, "JSON config mirroring the flags (a report's \"config\" block also works)");
    app.add_option("--out-dir", cfg.out_dir, "output directory (env UNMATE_OUT_DIR)");
    app.add_option("--workers", cfg.workers, "worker threads, 0 = available parallelism");
    app.add_option("--seed", cfg.seed, "seed for sampled checks");
    app.add_option("--eps-root", cfg.tol.eps_root, "root polishing tolerance");
    app.add_option("--eps-orbit", cfg.tol.eps_orbit, "orbit identification tolerance (chordal)");
    app.add_option("--eps-curve", cfg.tol.eps_curve, "curve clearance from postcritical points (chordal)");
    app.add_option("--max-iter", cfg.tol.max_iter, "iteration budget");
    app.add_option("--max-refine-depth", cfg.tol.max_refine_depth, "bisection budget while lifting");
    app.add_option("--resolution", cfg.resolution, "samples per source curve");
    app.add_flag("--quiet", quiet, "do not print the report");

    auto* orbits = app.add_subcommand("orbits", "postcritical set and orbit graph");
    orbits->add_option("--map", cfg.map, "catalog id, inline map JSON or file");

    auto* parts = app.add_subcommand("partitions", "bipartitions of P(R) with immune/swapping status");
    parts->add_option("--map", cfg.map, "map selector");
    parts->add_option("--depth", cfg.depth, "levels 1..N");

    auto* lf = app.add_subcommand("lift", "preimage of a curve under an iterate");
    lf->add_option("--map", cfg.map, "map selector");
    lf->add_option("--curve", cfg.curve, "curve id, figure tag, inline curve JSON or file");
    lf->add_option("--level", cfg.level, "iterate n");

    auto* cl = app.add_subcommand("classify", "equator verdict of a curve at level n");
    cl->add_option("--map", cfg.map, "map selector");
    cl->add_option("--curve", cfg.curve, "curve selector");
    cl->add_option("--level", cfg.level, "iterate n");

    auto* fd = app.add_subcommand("fold", "fold report up to depth N");
    fd->add_option("--map", cfg.map, "map selector");
    fd->add_option("--depth", cfg.depth, "search depth N");
    fd->add_option("--curve", cfg.curve, "extra candidate curve tried first");

    auto* cp = app.add_subcommand("captures", "capture parameters of a generation");
    cp->add_option("--generation", cfg.generation, "generation k >= 2");

    auto* sg = app.add_subcommand("semigroup", "finite self-maps: census, closure, classify, verify-theorems");
    sg->add_option("action", cfg.action, "census | closure | classify | verify-theorems");
    sg->add_option("--k", cfg.k, "size of the finite set");
    sg->add_option("--gens", cfg.gens, "maps separated by ';' (names like P|1 or images like 2,3,4,1)");
    sg->add_flag("--list", cfg.list, "list closure elements");

    auto* rc = app.add_subcommand("realize-check", "catalog orbit graphs and compositive containment");
    rc->add_option("--map", cfg.map, "restrict to one catalog id");
    rc->add_option("--pairs", cfg.pairs, "sampled compositive pairs");

    auto* fg = app.add_subcommand("figure", "reproduce a figure (fig4..fig21, or all)");
    fg->add_option("tag", cfg.action, "figure tag");
    fg->add_option("--image-resolution", cfg.image_resolution, "pixels per side");
    fg->add_option("--map", cfg.map, "override the figure's map");
    bool no_basins = false;
    fg->add_flag("--no-basins", no_basins, "blank background");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (no_basins) cfg.basins = false;
    if (!app.get_subcommands().empty()) cfg.subcommand = app.get_subcommands().front()->get_name();
    if (cfg.subcommand.empty()) {
        std::cerr << "error: no subcommand given (and none in --config)\n" << app.help();
        return 2;
    }

    try {
        cfg.tol.validate();
        RunResult o;
        const auto& s = cfg.subcommand;
        if (s == "orbits") o = run_orbits(cfg);
        else if (s == "partitions") o = run_partitions(cfg);
        else if (s == "lift") o = run_lift(cfg);
        else if (s == "classify") o = run_classify(cfg);
        else if (s == "fold") o = run_fold(cfg);
        else if (s == "captures") o = run_captures(cfg);
        else if (s == "semigroup") o = run_semigroup(cfg);
        else if (s == "realize-check") o = run_realize(cfg);
        else if (s == "figure") o = run_figure(cfg);
        else throw Error(ErrorKind::Usage, "unknown subcommand " + s);

        Json report;
        report["config"] = cfg.to_json();
        report["exit_code"] = o.code;
        for (auto& [k, v] : o.body.items()) report[k] = v;
        fs::create_directories(cfg.out_dir);
        std::string text = report.dump(2) + "\n";
        std::ofstream(fs::path(cfg.out_dir) / (o.name + ".json")) << text;
        if (!quiet) std::cout << text;
        return o.code;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.kind() == ErrorKind::Usage) std::cerr << "run 'unmate " << cfg.subcommand << " --help' for options\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
