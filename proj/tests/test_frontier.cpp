#include <cmath>

#include "doctest.h"
#include "qbmm/errors.hpp"
#include "qbmm/frontier.hpp"

using namespace qbmm;

TEST_SUITE("frontier") {
    TEST_CASE("positive-q regime: mass drains to the slow node") {
        FrontierRegime f = frontier_regime_limits(1.0, 0.0, 1.0);
        CHECK(f.kind == RegimeKind::positive_q);
        CHECK(f.rho1_limit == 0.0);
        CHECK(f.rho2_limit == 1.0);
        CHECK(f.v2_limit == 0.0);
        CHECK(f.v1_unbounded);
        CHECK_FALSE(f.v2_unbounded);
    }

    TEST_CASE("negative-q regime is the mirror image") {
        FrontierRegime f = frontier_regime_limits(2.0, 4.0, -3.0);
        CHECK(f.kind == RegimeKind::negative_q);
        CHECK(f.rho1_limit == 2.0);
        CHECK(f.rho2_limit == 0.0);
        CHECK(f.v1_limit == 2.0);  // m1/m0
        CHECK(f.v2_unbounded);
        CHECK_FALSE(f.v1_unbounded);
    }

    TEST_CASE("zero-q regime splits the mass in half") {
        FrontierRegime f = frontier_regime_limits(1.0, 0.0, 0.0);
        CHECK(f.kind == RegimeKind::zero_q);
        CHECK(f.rho1_limit == 0.5);
        CHECK(f.rho2_limit == 0.5);
        CHECK(f.v1_limit == 0.0);
        CHECK(f.v2_limit == 0.0);
        CHECK_FALSE(f.v1_unbounded);
        CHECK_FALSE(f.v2_unbounded);
    }

    TEST_CASE("regime limits need positive mass") {
        CHECK_THROWS_AS(frontier_regime_limits(0.0, 0.0, 1.0), DomainError);
        CHECK_THROWS_AS(frontier_regime_limits(-1.0, 0.0, 1.0), DomainError);
    }

    TEST_CASE("cone membership at eta = 2") {
        ConeParameters cone;  // eta = 2
        ReducedMoments inside{1.0, 0.0, 0.01, 0.02};
        ReducedMoments outside{1.0, 0.0, 0.01, 0.05};
        ReducedMoments negative{1.0, 0.0, 0.01, -0.05};
        CHECK(cone_membership(inside, cone));
        CHECK_FALSE(cone_membership(outside, cone));
        CHECK_FALSE(cone_membership(negative, cone));
        CHECK_THROWS_AS(cone_membership({1.0, 0.0, 0.0, 0.0}, cone), DomainError);
    }

    TEST_CASE("clamp example: (1,0,0.01,0.05) -> (1,0,0.01,0.02)") {
        ConeParameters cone;
        MomentVector c = cone_clamp({1.0, 0.0, 0.01, 0.05}, cone);
        CHECK(c.m0 == 1.0);
        CHECK(c.m1 == 0.0);
        CHECK(c.m2 == 0.01);
        CHECK(c.m3 == doctest::Approx(0.02).epsilon(1e-14));
    }

    TEST_CASE("clamp preserves m0, m1, m2 bitwise and never increases |q|") {
        ConeParameters cone;
        MomentVector m{0.7, -0.3, 0.9, 2.341};
        ReducedMoments before = reduced_from_moments(m);
        MomentVector c = cone_clamp(m, cone);
        CHECK(c.m0 == m.m0);
        CHECK(c.m1 == m.m1);
        CHECK(c.m2 == m.m2);
        ReducedMoments after = reduced_from_moments(c);
        CHECK(std::fabs(after.q) <= std::fabs(before.q));
        CHECK(after.e == before.e);
    }

    TEST_CASE("clamp is the identity inside the cone, bitwise") {
        ConeParameters cone;
        MomentVector m{3.0, 1.0, 11.0, 25.0};  // |q| = 128 vs eta m0 e = 192
        MomentVector c = cone_clamp(m, cone);
        CHECK(c.m0 == m.m0);
        CHECK(c.m1 == m.m1);
        CHECK(c.m2 == m.m2);
        CHECK(c.m3 == m.m3);
    }

    TEST_CASE("clamp is idempotent bitwise") {
        ConeParameters cone;
        for (MomentVector m : {MomentVector{1.0, 0.0, 0.01, 0.05},
                               MomentVector{0.7, -0.3, 0.9, 2.341},
                               MomentVector{2.0, 1.0, 3.0, -40.0}}) {
            MomentVector once = cone_clamp(m, cone);
            MomentVector twice = cone_clamp(once, cone);
            CHECK(twice.m0 == once.m0);
            CHECK(twice.m1 == once.m1);
            CHECK(twice.m2 == once.m2);
            CHECK(twice.m3 == once.m3);
        }
    }

    TEST_CASE("membership holds after clamping, up to one ulp") {
        ConeParameters cone;
        for (MomentVector m : {MomentVector{1.0, 0.0, 0.01, 0.05},
                               MomentVector{0.7, -0.3, 0.9, 2.341},
                               MomentVector{2.0, 1.0, 3.0, -40.0}}) {
            ReducedMoments r = reduced_from_moments(cone_clamp(m, cone));
            CHECK(std::fabs(r.q) <= cone.eta * r.m0 * r.e * (1.0 + 1e-13));
        }
        CHECK_THROWS_AS(cone_clamp({1.0, 1.0, 1.0, 1.0}, cone), DomainError);
    }

    TEST_CASE("abscissa growth is monotone as e shrinks at fixed q") {
        // m1 = 0 makes q = m3 directly; q = 1 with e in {1e-2, 1e-4, 1e-6}.
        double prev_v1 = 0.0;
        double prev_rho1 = 2.0;
        for (double e : {1e-2, 1e-4, 1e-6}) {
            QuadratureState u = quadrature_from_moments({1.0, 0.0, e, 1.0});
            CHECK(u.v1 > prev_v1);
            CHECK(u.rho1 < prev_rho1);
            CHECK(u.rho1 > 0.0);
            prev_v1 = u.v1;
            prev_rho1 = u.rho1;
        }
    }

    TEST_CASE("monokinetic state of one velocity group") {
        MomentVector m = monokinetic_state(2.0, 3.0);
        CHECK(m.m0 == 2.0);
        CHECK(m.m1 == 3.0);
        CHECK(m.m2 == 4.5);
        CHECK(m.m3 == 6.75);
        CHECK_THROWS_AS(monokinetic_state(0.0, 1.0), DomainError);
        CHECK_THROWS_AS(monokinetic_state(-2.0, 1.0), DomainError);
    }
}
