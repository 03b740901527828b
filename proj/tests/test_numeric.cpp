#include <random>

#include "doctest.h"
#include "unmate/numeric.hpp"

using namespace unmate;

namespace {

bool has_root(const std::vector<cplx>& roots, cplx r, double eps) {
    for (auto x : roots)
        if (std::abs(x - r) < eps) return true;
    return false;
}

}  // namespace

TEST_SUITE("numeric") {
    TEST_CASE("chordal distance oracles") {
        CHECK(chordal_distance(SpherePoint::finite(0.0), SpherePoint::infinity()) == doctest::Approx(2.0));
        auto p = SpherePoint::finite({0.3, -1.7});
        CHECK(chordal_distance(p, p) == doctest::Approx(0.0));
        CHECK(chordal_distance(SpherePoint::finite(1.0), SpherePoint::finite(-1.0)) == doctest::Approx(2.0));
        // closed form 2|z-w| / sqrt((1+|z|^2)(1+|w|^2))
        cplx z{0.5, 2.0}, w{-1.0, 0.25};
        double closed = 2 * std::abs(z - w) / std::sqrt((1 + std::norm(z)) * (1 + std::norm(w)));
        CHECK(chordal_distance(z, w) == doctest::Approx(closed).epsilon(1e-12));
    }

    TEST_CASE("sphere point normalization") {
        SpherePoint p({3.0, 4.0}, {0.5, 0.0});
        CHECK(std::max(std::abs(p.num()), std::abs(p.den())) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(p.value() - cplx(6.0, 8.0)) < 1e-12);
        CHECK(SpherePoint::infinity().is_infinity());
        CHECK_THROWS_AS(SpherePoint(0.0, 0.0), Error);
    }

    TEST_CASE("poly_roots oracles") {
        auto r = poly_roots(Polynomial({0.0, 2.0, 1.0}));
        REQUIRE(r.size() == 2);
        CHECK(has_root(r, 0.0, 1e-12));
        CHECK(has_root(r, -2.0, 1e-12));
        auto q = poly_roots(Polynomial({-1.0, 0.0, 0.0, 0.0, 1.0}));
        REQUIRE(q.size() == 4);
        for (cplx u : {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)}) CHECK(has_root(q, u, 1e-12));
        auto c = poly_roots(Polynomial({-6.0, 8.0, -4.0, 1.0}));
        CHECK(has_root(c, 1.36110308052864737763, 1e-12));
        CHECK(has_root(c, {1.31944845973567631118, 1.63317024091523765612}, 1e-12));
        CHECK(has_root(c, {1.31944845973567631118, -1.63317024091523765612}, 1e-12));
    }

    TEST_CASE("poly_roots residual and count property") {
        std::mt19937 rng(7);
        std::normal_distribution<double> g;
        for (int trial = 0; trial < 50; ++trial) {
            int d = 1 + trial % 12;
            std::vector<cplx> c(d + 1);
            for (auto& x : c) x = {g(rng), g(rng)};
            Polynomial p(c);
            auto r = poly_roots(p);
            REQUIRE(static_cast<int>(r.size()) == d);
            for (auto z : r) CHECK(std::abs(p(z)) < 1e-9 * p.scale() * std::max(1.0, std::pow(std::abs(z), d)));
        }
    }

    TEST_CASE("poly_roots conjugation consistency") {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> u(-2, 2);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<cplx> c(6);
            for (auto& x : c) x = u(rng);
            auto r = poly_roots(Polynomial(c));
            for (auto z : r) CHECK(has_root(r, std::conj(z), 1e-10));
        }
    }

    TEST_CASE("moebius oracles") {
        auto p = SpherePoint::finite({0.2, 0.7});
        CHECK(chordal_distance(moebius_apply(MoebiusTransform::identity(), p), p) < 1e-15);
        CHECK(moebius_apply(MoebiusTransform(0, 1, 1, 0), SpherePoint::finite(0.0)).is_infinity());
        CHECK(moebius_apply(MoebiusTransform(-2, 0, 0, 1), SpherePoint::infinity()).is_infinity());
        CHECK_THROWS_AS(MoebiusTransform(1, 2, 2, 4), Error);
    }

    TEST_CASE("moebius inverse round trip") {
        std::mt19937 rng(3);
        std::normal_distribution<double> g;
        for (int t = 0; t < 100; ++t) {
            MoebiusTransform m({g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)});
            auto p = SpherePoint::finite({g(rng), g(rng)});
            CHECK(chordal_distance(moebius_apply(m, moebius_apply(m.inverse(), p)), p) < 1e-12);
        }
    }

    TEST_CASE("tolerance validation") {
        ToleranceConfig t;
        CHECK_NOTHROW(t.validate());
        t.eps_orbit = 0;
        CHECK_THROWS_AS(t.validate(), Error);
    }
}
