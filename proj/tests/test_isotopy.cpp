#include "doctest.h"
#include "unmate/families.hpp"
#include "unmate/isotopy.hpp"
#include "unmate/reference_curves.hpp"

using namespace unmate;

namespace {

PostcriticalSet make_set(std::vector<SpherePoint> pts) {
    PostcriticalSet P;
    P.points = std::move(pts);
    for (auto& p : P.points) P.labels.push_back(format_point(p));
    P.finite = true;
    return P;
}

JordanCurve circle(cplx c, double r, int n = 256) { return sample_parametric(CurveSpec::circle(c, r), n); }

CurveWord w(const std::string& s) { return parse_word(s); }

}  // namespace

TEST_SUITE("isotopy-engine") {
    TEST_CASE("word algebra") {
        CHECK(free_reduce({1, 2, -2, -1, 3}).letters == std::vector<int>{3});
        CHECK(cyclic_reduce(w("g2 g1 g3 g2^-1")).letters == std::vector<int>{1, 3});
        CHECK(w("g1 g2^-1").to_string() == "g1 g2^-1");
        CHECK(w("g1^2").letters == std::vector<int>{1, 1});
        CHECK(conjugate(w("g1 g2 g3"), w("g3 g1 g2")));
        CHECK_FALSE(conjugate(w("g1 g2"), w("g1 g3")));
        CHECK(w("g1 g2").inverse().letters == std::vector<int>{-2, -1});
        CHECK_THROWS_AS(parse_word("x1"), Error);
    }

    TEST_CASE("classify_isotopy oracles") {
        CHECK(classify_isotopy(w("g1 g2"), w("g2 g1")) == IsotopyVerdict::OrientationPreserving);
        CHECK(classify_isotopy(w("g1 g2"), w("g2^-1 g1^-1")) == IsotopyVerdict::OrientationReversing);
        CHECK(classify_isotopy(w("g1"), w("g2")) == IsotopyVerdict::NotIsotopic);
        CHECK(classify_isotopy(w("1"), w("g2")) == IsotopyVerdict::Inessential);
        auto a = w("g1"), b = w("g1");
        a.chart_id = "0@0";
        b.chart_id = "1@0";
        CHECK_THROWS_AS(classify_isotopy(a, b), Error);
    }

    TEST_CASE("build_chart oracles") {
        auto P = make_set({SpherePoint::finite(0.0), SpherePoint::infinity()});
        auto ch = build_chart(P, {circle(0.0, 0.5)});
        CHECK(ch.infinity_index == 1);
        CHECK(ch.punctures.size() == 1);
        auto R = catalog_entry("capture:3/2").map;
        auto P32 = postcritical_set(R).set;
        auto c = sample_parametric(reference_curve("capture:3/2").spec, 512);
        auto ch32 = build_chart(P32, {c});
        CHECK(P32.points[ch32.infinity_index].is_infinity());
        CHECK(ch32.punctures.size() == 3);
        CHECK(P32.size() == 4);
    }

    TEST_CASE("collinear punctures force a rotation") {
        auto P = make_set({SpherePoint::finite(0.0), SpherePoint::finite({0, 1}), SpherePoint::finite({0, 2}),
                           SpherePoint::infinity()});
        auto ch = build_chart(P, {circle({0, 1}, 0.3)});
        CHECK(ch.rotation != 0.0);
        for (size_t i = 0; i < ch.punctures.size(); ++i)
            for (size_t j = i + 1; j < ch.punctures.size(); ++j)
                CHECK(std::abs(ch.punctures[i].real() - ch.punctures[j].real()) > 1e-6);
    }

    TEST_CASE("curve_word oracles") {
        auto P = make_set({SpherePoint::finite(0.0), SpherePoint::finite(1.0), SpherePoint::infinity()});
        auto small = circle(0.0, 0.5);
        auto both = circle(0.5, 1.0);
        auto ch = build_chart(P, {small, both});
        REQUIRE(ch.infinity_index == 2);
        int g0 = ch.generator_point[0] == 0 ? 1 : 2;
        CHECK(curve_word(ch, small).letters == std::vector<int>{g0});
        CHECK(curve_word(ch, small.reversed()).letters == std::vector<int>{-g0});
        CHECK(conjugate(curve_word(ch, both), w("g1 g2")));
    }

    TEST_CASE("reversal gives the inverse word for reference curves") {
        for (auto& pc : reference_curves()) {
            INFO(pc.id);
            auto P = postcritical_set(catalog_entry(pc.map_id).map).set;
            auto c = sample_parametric(pc.spec, 512);
            auto ch = build_chart(P, {c});
            auto a = curve_word(ch, c), b = curve_word(ch, c.reversed());
            CHECK(cyclic_reduce(a.inverse()).letters == cyclic_reduce(b).letters);
        }
    }

    TEST_CASE("perturbed copies stay isotopic") {
        for (auto& pc : reference_curves()) {
            INFO(pc.id);
            auto P = postcritical_set(catalog_entry(pc.map_id).map).set;
            auto c = sample_parametric(pc.spec, 512);
            double clear = min_distance(c, P.points);
            std::vector<cplx> pts;
            for (size_t i = 0; i < c.size(); ++i)
                pts.push_back(c.samples[i].value() + 0.2 * clear * std::polar(1.0, 0.37 * i));
            auto d = curve_from_samples(pts);
            if (has_self_intersection(d)) continue;
            auto ch = build_chart(P, {c, d});
            CHECK(classify_isotopy(curve_word(ch, c), curve_word(ch, d)) == IsotopyVerdict::OrientationPreserving);
        }
    }

    TEST_CASE("verdicts do not depend on the chart") {
        for (std::string map : {"omega-3", "omega+2", "omega-4"}) {
            auto P = postcritical_set(catalog_entry(map).map).set;
            auto v = sample_parametric(reference_curve(map + ":V").spec, 512);
            auto vii = sample_parametric(reference_curve(map + ":VII").spec, 512);
            auto first = build_chart(P, {v, vii});
            auto base = classify_isotopy(curve_word(first, v), curve_word(first, vii));
            for (size_t t = 0; t < P.size(); ++t) {
                // decoys hug every other point so that point t is sent to infinity
                std::vector<JordanCurve> curves{v, vii};
                for (size_t j = 0; j < P.size(); ++j) {
                    if (j == t) continue;
                    if (P.points[j].is_infinity()) curves.push_back(circle(0.0, 100.0));
                    else curves.push_back(circle(P.points[j].value(), 0.01, 128));
                }
                auto ch = build_chart(P, curves);
                CHECK(ch.infinity_index == static_cast<int>(t));
                CHECK(classify_isotopy(curve_word(ch, v), curve_word(ch, vii)) == base);
            }
        }
    }
}
