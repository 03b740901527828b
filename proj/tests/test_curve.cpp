#include "doctest.h"
#include "unmate/families.hpp"
#include "unmate/reference_curves.hpp"

using namespace unmate;

namespace {

RationalMap square() { return RationalMap(Polynomial({0, 0, 1.0}), Polynomial({1.0})); }

JordanCurve ref_curve(const std::string& id, int res = 512) {
    auto c = sample_parametric(reference_curve(id).spec, res);
    c.name = id;
    return c;
}

}  // namespace

TEST_SUITE("curve-engine") {
    TEST_CASE("sampling") {
        auto c = sample_parametric(CurveSpec::circle(0.0, 1.0), 256);
        CHECK(c.size() >= 256);
        for (auto& p : c.samples) CHECK(std::abs(std::abs(p.value()) - 1.0) < 1e-12);
        auto v = ref_curve("omega+2:V");
        cplx ctr = -1.0 / (2.0 * beta3());
        for (auto& p : v.samples) CHECK(std::abs(std::abs(p.value() - ctr) - 0.8) < 1e-12);
        CHECK_NOTHROW(ref_curve("capture:3/2"));
    }

    TEST_CASE("sampling rejects bad input") {
        CHECK_THROWS_AS(sample_parametric(CurveSpec::circle(0.0, 1.0), 32), Error);
        auto open = CurveSpec::chain({CurvePiece::arc(0.0, 1.0, 0.0, 0.5), CurvePiece::segment(-1.0, 0.5)});
        CHECK_THROWS_AS(sample_parametric(open, 256), Error);
        // figure eight
        auto eight = CurveSpec::chain({CurvePiece::arc(-1.0, 1.0, 0.0, 1.0), CurvePiece::arc(1.0, 1.0, 0.5, 1.5)});
        CHECK_THROWS_AS(sample_parametric(eight, 256), Error);
        std::vector<cplx> coarse;
        for (int i = 0; i < 64; ++i) coarse.push_back(std::polar(1.0, M_PI * i / 63));
        auto c = curve_from_samples(coarse);
        CHECK_THROWS_AS(validate_jordan(c), Error);
    }

    TEST_CASE("lift oracles") {
        auto r4 = sample_parametric(CurveSpec::circle(0.0, 4.0), 512);
        auto l = lift(square(), r4);
        REQUIRE(l.curves.components.size() == 1);
        CHECK(l.covering_degrees == std::vector<int>{2});
        for (auto& p : l.curves.components[0].samples) CHECK(std::abs(std::abs(p.value()) - 2.0) < 1e-9);
        CHECK(lift(catalog_entry("omega-3").map, ref_curve("omega-3:VI")).curves.components.size() == 3);
        CHECK(lift(catalog_entry("capture:2").map, ref_curve("capture:2")).curves.components.size() == 2);
    }

    TEST_CASE("lift invariants") {
        for (auto id : {"omega+2:V", "omega+2:VI", "omega-3:VI", "omega-4:VI", "capture:4.1"}) {
            INFO(id);
            auto pcv = reference_curve(id);
            auto R = catalog_entry(pcv.map_id).map;
            auto src = ref_curve(id);
            for (int n : {1, 2}) {
                auto l = lift(IterateSpec{R, n}, src);
                int sum = 0;
                for (int d : l.covering_degrees) sum += d;
                CHECK(sum == IterateSpec{R, n}.degree());
                std::vector<char> seen(l.branch_permutation.size(), 0);
                int cycles = 0;
                for (size_t i = 0; i < seen.size(); ++i) {
                    if (seen[i]) continue;
                    ++cycles;
                    for (size_t j = i; !seen[j]; j = l.branch_permutation[j]) seen[j] = 1;
                }
                CHECK(cycles == static_cast<int>(l.curves.components.size()));
                // covering identity: lifted samples land on the source polyline
                for (auto& c : l.curves.components)
                    for (size_t i = 0; i < c.size(); i += 17) {
                        auto img = evaluate(IterateSpec{R, n}, c.samples[i]);
                        double best = INFINITY;
                        for (auto& s : src.samples) best = std::min(best, chordal_distance(img, s));
                        CHECK(best < 0.05);
                    }
                for (size_t a = 0; a < l.curves.components.size(); ++a)
                    for (size_t b = a + 1; b < l.curves.components.size(); ++b)
                        CHECK(min_distance(l.curves.components[a], l.curves.components[b].samples) > 1e-6);
                auto again = lift(IterateSpec{R, n}, src);
                CHECK(again.curves.total_samples() == l.curves.total_samples());
            }
        }
    }

    TEST_CASE("exact parameter covering identity on a circle") {
        auto c = sample_parametric(CurveSpec::circle(0.0, 3.0), 512);
        auto l = lift(square(), c);
        for (auto& comp : l.curves.components)
            for (size_t i = 0; i < comp.size(); ++i) {
                cplx expect = std::polar(3.0, 2 * M_PI * comp.params[i]);
                CHECK(chordal_distance(square()(comp.samples[i]), SpherePoint::finite(expect)) < 1e-8);
            }
    }

    TEST_CASE("clearance precondition") {
        auto R = catalog_entry("omega-3").map;
        auto pc = postcritical_set(R);
        auto through0 = sample_parametric(CurveSpec::circle({0, 0.5}, 0.5), 512);
        CHECK_THROWS_AS(lift(R, through0, {}, pc.set.points), Error);
    }

    TEST_CASE("winding oracles") {
        auto c = sample_parametric(CurveSpec::circle(0.0, 1.0), 256);
        CHECK(winding_number(c, SpherePoint::finite(0.0)) == 1);
        CHECK(winding_number(c, SpherePoint::finite(2.0)) == 0);
        CHECK(winding_number(c.reversed(), SpherePoint::finite(0.0)) == -1);
        CHECK_THROWS_AS(winding_number(c, c.samples[3]), Error);
    }

    TEST_CASE("side partition oracles") {
        auto P = postcritical_set(catalog_entry("omega+2").map).set;
        auto v = ref_curve("omega+2:V");
        auto s = side_partition(v, P, default_chart(v, P));
        std::vector<SpherePoint> inside;
        for (int i : s.inside) inside.push_back(P.points[i]);
        CHECK(inside.size() == 2);
        for (auto q : {SpherePoint::finite(0.0), SpherePoint::finite(-1.0 / beta3())}) {
            bool found = false;
            for (auto& p : inside) found = found || chordal_distance(p, q) < 1e-9;
            CHECK(found);
        }
        auto P3 = postcritical_set(catalog_entry("omega-3").map).set;
        auto vii = ref_curve("omega-3:VII");
        auto s3 = side_partition(vii, P3, default_chart(vii, P3));
        std::vector<int> expect{P3.find(SpherePoint::finite(0.0), 1e-9), P3.find(SpherePoint::finite({0, 1}), 1e-9)};
        std::sort(expect.begin(), expect.end());
        auto got = s3.inside;
        std::sort(got.begin(), got.end());
        CHECK(got == expect);
        auto tiny = sample_parametric(CurveSpec::circle(-1.0, 0.05), 128);
        auto st = side_partition(tiny, P, MoebiusTransform::identity());
        REQUIRE(st.inside.size() == 1);
        CHECK(chordal_distance(P.points[st.inside[0]], SpherePoint::finite(-1.0)) < 1e-9);
    }

    TEST_CASE("preimage containment") {
        auto R = catalog_entry("omega-3").map;
        auto P = postcritical_set(R).set;
        auto src = ref_curve("omega-3:V");
        auto chart = default_chart(src, P);
        auto l = lift(R, src);
        REQUIRE(l.curves.components.size() == 1);
        auto& up = l.curves.components[0];
        for (size_t i = 0; i < P.size(); ++i) {
            int w0 = moebius_apply(chart, P.points[i]).is_infinity() ? 0 : winding_number(src, P.points[i], chart);
            for (auto& x : fiber(R, P.points[i])) {
                if (moebius_apply(chart, x).is_infinity()) continue;
                int w1 = winding_number(up, x, chart);
                CHECK((w0 != 0) == (w1 != 0));
            }
        }
    }
}
