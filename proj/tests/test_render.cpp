#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "unmate/families.hpp"
#include "unmate/render.hpp"

using namespace unmate;

namespace {

RationalMap poly_map(std::vector<cplx> c) { return RationalMap(Polynomial(c), Polynomial({1.0})); }

RenderConfig small(int res, cplx center = 0.0, double width = 4.0) {
    RenderConfig c;
    c.resolution = res;
    c.center = center;
    c.width = width;
    return c;
}

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("render-report") {
    TEST_CASE("square map has two basins") {
        auto img = basin_render(poly_map({0.0, 0.0, 1.0}), small(64));
        CHECK(img.distinct_labels() == 2);
        CHECK(img.resolved_fraction() > 0.99);
        CHECK(img.at(32, 32) != img.at(0, 0));
    }

    TEST_CASE("non-hyperbolic maps are rejected") {
        CHECK_THROWS_AS(basin_model(poly_map({-2.0, 0.0, 1.0})), Error);
        CHECK_THROWS_AS(small(0).validate(), Error);
    }

    TEST_CASE("rendering is deterministic across worker counts") {
        auto r = catalog_entry("omega+3").map;
        auto a = small(64);
        a.workers = 1;
        auto b = a;
        b.workers = 4;
        CHECK(basin_render(r, a).labels == basin_render(r, b).labels);
    }

    TEST_CASE("labels move forward along the cycle") {
        for (std::string id : {"omega+3", "omega-3", "capture:3/2"}) {
            auto R = catalog_entry(id).map;
            auto m = basin_model(R);
            std::mt19937_64 rng(5);
            std::uniform_real_distribution<double> u(-2.0, 2.0);
            int checked = 0;
            for (int i = 0; i < 4000 && checked < 1000; ++i) {
                auto x = SpherePoint::finite(cplx(u(rng), u(rng)));
                int l = m.label(x);
                if (l < 0) continue;
                int l2 = m.label(R(x));
                if (l2 < 0) continue;
                CHECK(l2 == m.next[l]);
                ++checked;
            }
            CHECK(checked > 500);
        }
    }

    TEST_CASE("blank background with the unit circle") {
        JordanCurve c = sample_parametric(CurveSpec::circle(0.0, 1.0), 128);
        MultiCurve mc;
        mc.components = {c};
        auto svg = svg_document({CurveLayer{mc, 0}}, small(100), "");
        CHECK(svg.find("<polyline") != std::string::npos);
        CHECK(svg.find("#0000ff") != std::string::npos);
        CHECK(svg.find("<polyline", svg.find("<polyline") + 1) == std::string::npos);
        CHECK(svg.find("<image") == std::string::npos);
        CHECK(std::string(depth_color(0)) == "#0000ff");
        CHECK(std::string(depth_color(1)) != std::string(depth_color(0)));
    }

    TEST_CASE("proximity grows with depth") {
        auto R = poly_map({0.0, 0.0, 1.0});
        auto c = sample_parametric(CurveSpec::circle(0.0, 1.5), 128);
        double prev = -1;
        for (int d : {0, 2, 6}) {
            auto p = julia_proximity_check(R, c, d);
            CHECK(p.fraction >= prev);
            prev = p.fraction;
            if (d == 0) CHECK(p.fraction < 0.05);
        }
        CHECK(prev > 0.99);
    }

    TEST_CASE("figure specs") {
        auto tags = figure_tags();
        CHECK(tags.front() == "fig4");
        CHECK(tags.back() == "fig21");
        auto s = figure_spec("fig15");
        CHECK(s.map_id == "omega-3");
        CHECK(s.curve_id == "omega-3:V");
        CHECK(figure_base_name("capture:3/2", "fig4") == "capture-3_2_fig4");
        CHECK_THROWS(figure_spec("fig99"));
    }

    TEST_CASE("figure output is stable") {
        auto dir = std::filesystem::temp_directory_path() / "unmate_render_test";
        std::filesystem::create_directories(dir);
        auto s = figure_spec("fig15");
        s.render.resolution = 64;
        auto j1 = render_figure(s, dir.string(), 128);
        auto svg1 = slurp((dir / "omega-3_fig15.svg").string());
        auto j2 = render_figure(s, dir.string(), 128);
        CHECK(j1 == j2);
        CHECK(svg1 == slurp((dir / "omega-3_fig15.svg").string()));
        CHECK(std::filesystem::exists(dir / "omega-3_fig15.png"));
        CHECK(std::filesystem::exists(dir / "omega-3_fig15.json"));
        std::filesystem::remove_all(dir);
    }
}
