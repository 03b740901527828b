#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "unmate/equator.hpp"
#include "unmate/families.hpp"
#include "unmate/reference_curves.hpp"
#include "unmate/render.hpp"
#include "unmate/semigroup.hpp"

using namespace unmate;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Check {
    bool ok = true;
    std::string why;
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!why.empty()) why += "; ";
            why += what;
        }
    }
};

bool roots_match(const std::vector<cplx>& got, const std::vector<cplx>& want, double tol) {
    if (got.size() != want.size()) return false;
    std::vector<bool> used(got.size(), false);
    for (auto w : want) {
        bool hit = false;
        for (size_t i = 0; i < got.size(); ++i)
            if (!used[i] && std::abs(got[i] - w) < tol) {
                used[i] = hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

JordanCurve ref_curve(const std::string& id) {
    auto c = sample_parametric(reference_curve(id).spec, 512);
    c.name = id;
    return c;
}

EquatorVerdict verdict(const std::string& id, int n) {
    return classify_curve(catalog_entry(reference_curve(id).map_id).map, n, ref_curve(id));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Check c1() {
    Check c;
    auto t = Clock::now();
    auto r = capture_parameters(4);
    double s = since(t);
    c.expect(roots_match(r, {1.36110308052864737763, {1.31944845973567631118, 1.63317024091523765612},
                             {1.31944845973567631118, -1.63317024091523765612}},
                         1e-10),
             "generation 4 roots differ");
    c.expect(s < 1.0, "took " + std::to_string(s) + " s");
    return c;
}

Check c2() {
    Check c;
    c.expect(roots_match(capture_parameters(5),
                         {1.29982357191516455242,
                          {1.65053336520007473230, 0.42354144690912219689},
                          {1.65053336520007473230, -0.42354144690912219689},
                          {1.69955484884234299149, 1.50934766560440881835},
                          {1.69955484884234299149, -1.50934766560440881835}},
                         1e-10),
             "generation 5 roots differ");
    c.expect(roots_match(capture_parameters(2), {2.0}, 1e-12), "generation 2");
    c.expect(roots_match(capture_parameters(3), {1.5}, 1e-12), "generation 3");
    return c;
}

Check c3() {
    Check c;
    for (auto& e : full_catalog()) {
        try {
            auto g = match_expected_graph(e, postcritical_set(e.map), 1e-9);
            c.expect(g.ok, e.name + ": " + g.detail);
        } catch (const Error& ex) {
            c.expect(false, e.name + ": " + ex.what());
        }
    }
    return c;
}

Check c4() {
    Check c;
    struct Row {
        std::string id;
        int n;
        std::function<bool(const EquatorVerdict&)> ok;
        std::string want;
    };
    auto is = [](Outcome o) { return [o](const EquatorVerdict& v) { return v.outcome == o; }; };
    auto splits = [](int k) {
        return [k](const EquatorVerdict& v) { return v.outcome == Outcome::Splits && v.components >= k; };
    };
    auto splits_exact = [](int k) {
        return [k](const EquatorVerdict& v) { return v.outcome == Outcome::Splits && v.components == k; };
    };
    std::vector<Row> rows = {
        {"omega+2:V", 2, is(Outcome::OREquator), "OREquator"},
        {"omega+2:V", 4, is(Outcome::Equator), "Equator"},
        {"omega+2:VI", 1, splits_exact(2), "Splits(2)"},
        {"omega+2:VII", 2, is(Outcome::OREquator), "OREquator"},
        {"omega+3:V", 2, is(Outcome::OREquator), "OREquator"},
        {"omega+3:VII", 2, is(Outcome::OREquator), "OREquator"},
        {"omega-3:V", 1, is(Outcome::Equator), "Equator"},
        {"omega-3:VI", 1, splits_exact(3), "Splits(3)"},
        {"omega-3:VII", 1, is(Outcome::OREquator), "OREquator"},
        {"omega-4:V", 1, is(Outcome::Equator), "Equator"},
        {"omega-4:VI", 1, splits(2), "Splits"},
        {"omega-4:VII", 1, is(Outcome::OREquator), "OREquator"},
        {"capture:2", 1, splits(2), "Splits(>=2)"},
        {"capture:3/2", 1, is(Outcome::NotIsotopic), "NotIsotopic"},
        {"capture:3/2", 2, is(Outcome::Equator), "Equator"},
        {"capture:4.1", 1, splits_exact(2), "Splits(2)"},
        {"capture:5.1", 1, is(Outcome::NotIsotopic), "NotIsotopic"},
        {"capture:5.1", 2, is(Outcome::Equator), "Equator"},
    };
    auto t = Clock::now();
    for (auto& r : rows) {
        try {
            auto v = verdict(r.id, r.n);
            c.expect(r.ok(v), r.id + " level " + std::to_string(r.n) + ": " + v.label() + " != " + r.want);
        } catch (const Error& ex) {
            c.expect(false, r.id + ": " + ex.what());
        }
    }
    double s = since(t);
    c.expect(s < 60.0, "took " + std::to_string(s) + " s");
    return c;
}

Check c5() {
    Check c;
    int instances = 0;
    for (auto& pc : reference_curves()) {
        auto R = catalog_entry(pc.map_id).map;
        auto curve = ref_curve(pc.id);
        for (int n : {1, 2}) {
            try {
                auto v = classify_curve(R, n, curve);
                if (v.outcome != Outcome::Equator && v.outcome != Outcome::OREquator) continue;
                ++instances;
                auto d = classify_curve(R, 2 * n, curve);
                c.expect(d.outcome == Outcome::Equator,
                         pc.id + " " + v.label() + " at " + std::to_string(n) + " gives " + d.label());
            } catch (const Error& ex) {
                c.expect(false, pc.id + ": " + ex.what());
            }
        }
    }
    c.expect(instances > 0, "no instances");
    return c;
}

UnmatabilityReport fold_with_references(const std::string& id, int N) {
    FoldOptions o;
    o.map_id = id;
    for (auto& pc : reference_curves())
        if (catalog_entry(pc.map_id).name == catalog_entry(id).name) o.curves.push_back(ref_curve(pc.id));
    return fold_report(catalog_entry(id).map, N, o);
}

Check c6() {
    Check c;
    auto a = fold_with_references("omega+2", 4);
    c.expect(a.label() == "MatingAtFold(4)", "omega+2: " + a.label());
    auto b = fold_with_references("capture:3/2", 2);
    c.expect(b.label() == "MatingAtFold(2)", "capture:3/2: " + b.label());
    for (auto& e : b.or_evidence) c.expect(e.level != 1, "capture:3/2 has level-1 OR evidence");
    auto d = fold_with_references("capture:2", 4);
    c.expect(d.label() == "NoEquatorFoundUpTo(4)", "capture:2: " + d.label());
    for (std::string id : {"omega-2:b1", "omega-2:b2"}) {
        auto r = fold_with_references(id, 2);
        bool or1 = false;
        for (auto& e : r.or_evidence) or1 = or1 || (e.level == 1 && e.reverified);
        c.expect(or1, id + ": no level-1 OR evidence");
        c.expect(r.label() == "MatingAtFold(2)", id + ": " + r.label());
    }
    return c;
}

Check c7() {
    Check c;
    auto t = Clock::now();
    auto rows = census(4);
    const std::vector<int> expected{6, 8, 3, 6, 1, 24, 24, 12, 12, 24, 24, 12, 4, 24, 24, 12, 12, 12, 12};
    c.expect(rows.size() == expected.size(), "series count");
    int total = 0, periodic = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i < expected.size()) c.expect(rows[i].count == expected[i], "series " + rows[i].series);
        total += rows[i].count;
        if (rows[i].family == "periodic") periodic += rows[i].count;
    }
    c.expect(total == 256 && periodic == 24 && total - periodic == 232, "totals");
    c.expect(closure({named_map("P|1"), named_map("P||A1")}).size() == 24, "periodic closure");
    c.expect(closure({named_map("P|1"), named_map("P||A1"), named_map("S|A1")}).size() == 256, "full closure");
    auto sa = verify_sa_generating();
    c.expect(sa.chosen.size() == 12 && sa.result.size() == 232, "squares pairing");
    c.expect(!exhaustive_pair_search(4).any_full, "a pair generates everything");
    double s = since(t);
    c.expect(s < 30.0, "took " + std::to_string(s) + " s");
    return c;
}

Check c8() {
    Check c;
    auto ea = catalog_entry("realize:E_a").map;
    auto r = compositive_trick_check(ea, ea);
    std::vector<SpherePoint> want{SpherePoint::finite(0.0), SpherePoint::finite(1.0), SpherePoint::infinity()};
    bool same = r.p12.size() == want.size();
    for (auto& w : want) {
        bool hit = false;
        for (auto& p : r.p12) hit = hit || chordal_distance(p, w) < 1e-9;
        same = same && hit;
    }
    c.expect(same, "P(E_a o E_a) is not {0, 1, inf}");
    c.expect(r.containment, "E_a containment");
    auto ca = catalog_entry("realize:C_a");
    c.expect(match_expected_graph(ca, postcritical_set(ca.map), 1e-9).ok, "restriction differs from map C");
    auto s = compositive_survey(20, 20240611);
    c.expect(s.sampled.size() == 20, "fewer than 20 pairs");
    for (auto& p : s.sampled) {
        c.expect(p.error.empty(), p.first + " o " + p.second + ": " + p.error);
        c.expect(p.report.sub_preserved, p.first + " o " + p.second + " outside the hypothesis");
        c.expect(p.report.containment, p.first + " o " + p.second + ": containment fails");
    }
    return c;
}

Check c9() {
    Check c;
    auto sq = RationalMap(Polynomial({0.0, 0.0, 1.0}), Polynomial({1.0}));
    auto a = julia_proximity_check(sq, sample_parametric(CurveSpec::circle(0.0, 1.5), 256), 6);
    c.expect(a.fraction >= 0.99, "z^2 depth 6: " + std::to_string(a.fraction));
    auto b = julia_proximity_check(catalog_entry("omega+2").map, ref_curve("omega+2:V"), 8);
    c.expect(b.fraction >= 0.99, "omega+2 V depth 8: " + std::to_string(b.fraction));
    return c;
}

struct FigureMeta {
    std::string tag, file;
    std::vector<std::vector<int>> inside;  // per layer, single component each
    int labels;
};

Check c10() {
    Check c;
    const std::vector<FigureMeta> meta = {
        {"fig9", "omega+2_fig9", {{0, 3}, {2, 3}, {0, 3}, {2, 3}, {0, 3}}, 4},
        {"fig15", "omega-3_fig15", {{0, 1}, {0, 1}, {0, 1}}, 4},
        {"fig17", "omega-3_fig17", {{1, 2}, {1, 2}, {1, 2}}, 4},
        {"fig21", "omega+3_fig21", {}, 4},
    };
    auto base = fs::temp_directory_path() / "unmate_acceptance";
    fs::remove_all(base);
    for (auto& m : meta) {
        try {
            auto spec = figure_spec(m.tag);
            auto j = nlohmann::json::parse(render_figure(spec, (base / "a").string()));
            render_figure(spec, (base / "b").string());
            c.expect(slurp(base / "a" / (m.file + ".svg")) == slurp(base / "b" / (m.file + ".svg")),
                     m.tag + " svg differs between runs");
            c.expect(fs::exists(base / "a" / (m.file + ".png")), m.tag + " png missing");
            auto& layers = j["layers"];
            c.expect(layers.size() == m.inside.size(), m.tag + " layer count");
            for (size_t i = 0; i < layers.size() && i < m.inside.size(); ++i) {
                auto& l = layers[i];
                int d = l["depth"].get<int>();
                c.expect(l["color"].get<std::string>() == depth_color(d), m.tag + " colour");
                c.expect(l["components"].get<int>() == 1, m.tag + " components at depth " + std::to_string(d));
                c.expect(l["detail"][0]["inside"].get<std::vector<int>>() == m.inside[i],
                         m.tag + " sides at depth " + std::to_string(d));
            }
            c.expect(j["basins"]["labels_present"].get<int>() == m.labels, m.tag + " basin count");
            c.expect(j["basins"]["resolved_fraction"].get<double>() >= 0.95, m.tag + " resolved fraction");
        } catch (const std::exception& ex) {
            c.expect(false, m.tag + ": " + ex.what());
        }
    }
    fs::remove_all(base);
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"capture roots, generation 4", c1},    {"capture roots, generation 5", c2},
        {"orbit graphs", c3},                   {"curve verdicts", c4},
        {"doubled levels", c5},                 {"fold reports", c6},
        {"semigroup census", c7},               {"compositive trick", c8},
        {"backward limit near the Julia set", c9}, {"figures", c10},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto t = Clock::now();
        Check r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& ex) {
            r.ok = false;
            r.why = ex.what();
        }
        std::printf("%s %zu %s (%.2f s)%s%s\n", r.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), since(t),
                    r.ok ? "" : ": ", r.why.c_str());
        std::fflush(stdout);
        if (!r.ok) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
