#include <random>

#include "doctest.h"
#include "unmate/families.hpp"
#include "unmate/semigroup.hpp"

using namespace unmate;

namespace {

FiniteSelfMap fm(std::vector<int> one_based) {
    for (auto& x : one_based) --x;
    return FiniteSelfMap{one_based};
}

RationalMap poly_map(std::vector<cplx> c) { return RationalMap(Polynomial(c), Polynomial({1.0})); }

}  // namespace

TEST_SUITE("finite-semigroup") {
    TEST_CASE("composition conventions") {
        auto f = fm({2, 3, 4, 1});
        auto g = fm({1, 1, 3, 3});
        CHECK(compose_fm(f, g) == fm({2, 2, 4, 4}));
        CHECK(compose_fm(g, f) == fm({1, 3, 3, 1}));
        CHECK(power(f, 4) == FiniteSelfMap::identity(4));
        CHECK(compose_fm(FiniteSelfMap::identity(4), g) == g);
        CHECK(FiniteSelfMap::parse("2,3,4,1") == f);
        CHECK(FiniteSelfMap::parse("p1->p2 p2->p3 p3->p4 p4->p1") == f);
        CHECK(FiniteSelfMap::from_code(f.code(), 4) == f);
        CHECK(is_periodic(f));
        CHECK(!is_periodic(g));
    }

    TEST_CASE("composition is associative") {
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> c(0, 255);
        for (int i = 0; i < 500; ++i) {
            auto a = FiniteSelfMap::from_code(c(rng), 4);
            auto b = FiniteSelfMap::from_code(c(rng), 4);
            auto d = FiniteSelfMap::from_code(c(rng), 4);
            CHECK(compose_fm(a, compose_fm(b, d)) == compose_fm(compose_fm(a, b), d));
        }
    }

    TEST_CASE("series identities") {
        CHECK(classify_series(fm({2, 3, 4, 2})).name == "S|A");
        CHECK(classify_series(fm({1, 1, 1, 1})).name == "S|H");
        CHECK(classify_series(fm({1, 2, 4, 4})).name == "S|||");
        CHECK(classify_series(fm({2, 2, 4, 4})).name == "S||D");
        CHECK(classify_series(fm({2, 3, 3, 3})).name == "S|F");
        CHECK(classify_series(fm({1, 2, 3, 4})).name == "P||||");
        CHECK(classify_series(named_map("P|6")).name == "P|");
        CHECK(series_names().size() == 19);
    }

    TEST_CASE("every map on four points has a series") {
        for (auto& f : all_maps(4)) CHECK(!classify_series(f).name.empty());
    }

    TEST_CASE("series are conjugacy classes") {
        std::vector<int> perm{0, 1, 2, 3};
        std::mt19937 rng(11);
        std::uniform_int_distribution<int> c(0, 255);
        for (int i = 0; i < 200; ++i) {
            auto f = FiniteSelfMap::from_code(c(rng), 4);
            std::shuffle(perm.begin(), perm.end(), rng);
            FiniteSelfMap s{perm}, inv{std::vector<int>(4)};
            for (int j = 0; j < 4; ++j) inv.image[perm[j]] = j;
            CHECK(classify_series(compose_fm(s, compose_fm(f, inv))).name == classify_series(f).name);
        }
    }

    TEST_CASE("census") {
        auto rows = census(4);
        const std::vector<int> expected{6, 8, 3, 6, 1, 24, 24, 12, 12, 24, 24, 12, 4, 24, 24, 12, 12, 12, 12};
        REQUIRE(rows.size() == expected.size());
        int total = 0;
        for (size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i].count == expected[i]);
            total += rows[i].count;
        }
        CHECK(total == 256);
        auto csv = census_csv(rows);
        CHECK(csv.find("series") != std::string::npos);
    }

    TEST_CASE("closures") {
        auto c24 = closure({named_map("P|1"), named_map("P||A1")});
        CHECK(c24.size() == 24);
        CHECK(c24.closed);
        for (auto& f : c24.closure) CHECK(is_periodic(f));
        auto c256 = closure({named_map("P|1"), named_map("P||A1"), named_map("S|A1")});
        CHECK(c256.size() == 256);
        CHECK(closure({named_map("P|1")}).size() == 4);
        auto nb = closure({fm({1, 1, 3, 3}), fm({2, 2, 4, 4})});
        for (auto& f : nb.closure) CHECK(!is_periodic(f));
    }

    TEST_CASE("closure is closed under composition") {
        auto c = closure({fm({2, 1, 3, 3}), fm({1, 3, 4, 4})});
        for (auto& a : c.closure)
            for (auto& b : c.closure) CHECK(std::binary_search(c.closure.begin(), c.closure.end(), compose_fm(a, b)));
    }

    TEST_CASE("squares pairing generates everything but the bijections") {
        auto sa = verify_sa_generating();
        CHECK(sa.chosen.size() == 12);
        CHECK(sa.result.size() == 232);
        for (auto& [f, f2] : sa.pairs) CHECK(f2 == compose_fm(f, f));
    }

    TEST_CASE("no two maps generate everything") {
        auto s = exhaustive_pair_search(4);
        CHECK(!s.any_full);
        CHECK(s.largest < 256);
        CHECK(s.pairs_tested > 0);
    }

    TEST_CASE("compositive examples") {
        auto ea = catalog_entry("realize:E_a").map;
        auto r = compositive_trick_check(ea, ea);
        CHECK(r.containment);
        CHECK(r.hypothesis);
        CHECK(r.equality);
        auto sq = poly_map({0.0, 0.0, 1.0});
        auto bas = poly_map({-1.0, 0.0, 1.0});
        CHECK(compositive_trick_check(sq, sq).containment);
        auto rb = compositive_trick_check(bas, sq);
        CHECK(rb.p12.size() >= 2);
    }

    TEST_CASE("compositive degree budget") {
        auto big = poly_map({0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0});
        CHECK_THROWS(compositive_trick_check(big, big));
    }

    TEST_CASE("compositive survey is reproducible") {
        auto a = compositive_survey(5, 3);
        auto b = compositive_survey(5, 3);
        REQUIRE(a.sampled.size() == 5);
        CHECK(a.eligible > 0);
        for (size_t i = 0; i < 5; ++i) {
            CHECK(a.sampled[i].first == b.sampled[i].first);
            CHECK(a.sampled[i].second == b.sampled[i].second);
            CHECK(a.sampled[i].report.containment);
        }
    }
}
