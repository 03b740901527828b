#include "doctest.h"
#include "unmate/equator.hpp"
#include "unmate/families.hpp"
#include "unmate/reference_curves.hpp"

using namespace unmate;

namespace {

JordanCurve ref_curve(const std::string& id) {
    auto c = sample_parametric(reference_curve(id).spec, 512);
    c.name = id;
    return c;
}

EquatorVerdict verdict(const std::string& id, int n) {
    auto pc = reference_curve(id);
    return classify_curve(catalog_entry(pc.map_id).map, n, ref_curve(id));
}

}  // namespace

TEST_SUITE("equator-search") {
    TEST_CASE("bipartition enumeration") {
        CHECK(enumerate_bipartitions(3).size() == 3);
        CHECK(enumerate_bipartitions(4).size() == 7);
        CHECK(enumerate_bipartitions(2).size() == 1);
        for (int m = 2; m <= 6; ++m)
            for (auto& b : enumerate_bipartitions(m)) {
                CHECK(!b.white.empty());
                CHECK(!b.black.empty());
                CHECK(b.white[0] == 0);
                CHECK(b.white.size() + b.black.size() == static_cast<size_t>(m));
            }
    }

    TEST_CASE("partition dynamics oracles") {
        auto pc = postcritical_set(catalog_entry("omega+2").map);
        auto V = induced_bipartition(ref_curve("omega+2:V"), pc.set);
        auto d = partition_dynamics(pc.graph, V, 4);
        CHECK(d.at(1) == DynStatus::Neither);
        CHECK(d.at(2) == DynStatus::Swapping);
        CHECK(d.at(4) == DynStatus::Immune);
        auto pm = postcritical_set(catalog_entry("omega-3").map);
        CHECK(partition_dynamics(pm.graph, induced_bipartition(ref_curve("omega-3:V"), pm.set), 2).at(1) ==
              DynStatus::Immune);
        CHECK(partition_dynamics(pm.graph, induced_bipartition(ref_curve("omega-3:VII"), pm.set), 2).at(1) ==
              DynStatus::Swapping);
    }

    TEST_CASE("swapping squares to immune on every catalog graph") {
        for (auto& e : full_catalog()) {
            auto pc = postcritical_set(e.map);
            for (auto& b : enumerate_bipartitions(pc.set)) {
                auto d = partition_dynamics(pc.graph, b, 8);
                for (int n = 1; 2 * n <= 8; ++n)
                    if (d.at(n) == DynStatus::Swapping) CHECK(d.at(2 * n) == DynStatus::Immune);
            }
        }
    }

    TEST_CASE("classify_curve oracles") {
        CHECK(verdict("omega-3:V", 1).outcome == Outcome::Equator);
        CHECK(verdict("omega-3:VII", 1).outcome == Outcome::OREquator);
        CHECK(verdict("capture:3/2", 1).outcome == Outcome::NotIsotopic);
        CHECK(verdict("capture:3/2", 2).outcome == Outcome::Equator);
        auto s = verdict("omega-3:VI", 1);
        CHECK(s.outcome == Outcome::Splits);
        CHECK(s.components == 3);
        CHECK(s.label() == "Splits(3)");
        CHECK(verdict("omega+2:V", 1).outcome == Outcome::PartitionIncompatible);
    }

    TEST_CASE("gate soundness over the reference curves") {
        for (auto& pc : reference_curves())
            for (int n : {1, 2, 3, 4}) {
                auto v = verdict(pc.id, n);
                INFO(pc.id << " n=" << n << " " << v.label());
                CHECK(v.consistent);
                if (v.outcome == Outcome::Equator) CHECK(v.status == DynStatus::Immune);
                if (v.outcome == Outcome::OREquator) CHECK(v.status == DynStatus::Swapping);
            }
    }

    TEST_CASE("doubling properties") {
        for (auto& pc : reference_curves())
            for (int n : {1, 2}) {
                auto v = verdict(pc.id, n);
                if (v.outcome != Outcome::Equator && v.outcome != Outcome::OREquator) continue;
                INFO(pc.id << " n=" << n);
                CHECK(verdict(pc.id, 2 * n).outcome == Outcome::Equator);
            }
    }

    TEST_CASE("or equators of the scaled inverse square") {
        for (std::string id : {"omega-2:b1", "omega-2:b2"}) {
            auto R = catalog_entry(id).map;
            auto P = postcritical_set(R).set;
            for (auto& b : enumerate_bipartitions(P))
                for (auto& c : candidate_curves(P, b)) {
                    auto v = classify_curve(R, 1, c);
                    if (v.outcome == Outcome::OREquator) CHECK(classify_curve(R, 2, c).outcome == Outcome::Equator);
                }
        }
    }

    TEST_CASE("candidate curves induce their bipartition") {
        for (std::string id : {"omega+2", "omega-3", "capture:3/2", "capture:2", "realize:A"}) {
            auto P = postcritical_set(catalog_entry(id).map).set;
            for (auto& b : enumerate_bipartitions(P)) {
                auto cs = candidate_curves(P, b);
                CHECK(!cs.empty());
                for (auto& c : cs) CHECK(induced_bipartition(c, P) == b);
            }
        }
        PostcriticalSet two;
        two.points = {SpherePoint::finite(0.0), SpherePoint::finite(10.0)};
        two.labels = {"0", "10"};
        auto cs = candidate_curves(two, enumerate_bipartitions(2)[0]);
        CHECK(!cs.empty());
    }

    TEST_CASE("fold reports") {
        FoldOptions o;
        o.map_id = "capture:3/2";
        o.curves = {ref_curve("capture:3/2")};
        auto r = fold_report(catalog_entry("capture:3/2").map, 2, o);
        CHECK(r.label() == "MatingAtFold(2)");
        for (auto& e : r.or_evidence) CHECK(e.level != 1);
        FoldOptions o2;
        o2.map_id = "omega-2:b1";
        auto r2 = fold_report(catalog_entry("omega-2:b1").map, 2, o2);
        CHECK(r2.label() == "MatingAtFold(2)");
        bool or1 = false;
        for (auto& e : r2.or_evidence) or1 = or1 || (e.level == 1 && e.reverified);
        CHECK(or1);
    }
}
