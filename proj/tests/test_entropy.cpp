#include <cmath>
#include <random>

#include "doctest.h"
#include "qbmm/entropy.hpp"
#include "qbmm/errors.hpp"

using namespace qbmm;

namespace {

QuadratureState random_state(std::mt19937& gen) {
    std::uniform_real_distribution<double> logrho(std::log(1e-3), std::log(1e3));
    std::uniform_real_distribution<double> vel(-10.0, 10.0);
    return {std::exp(logrho(gen)), std::exp(logrho(gen)), vel(gen), vel(gen)};
}

// Condition scale for the F1/F2 sign checks: the sum of the absolute values
// of the five assembled terms.
double residual_scale(double v1, double v2, const EntropySpec& s) {
    double dv = v1 - v2;
    return 6.0 * std::fabs(s.value(v1)) + 6.0 * std::fabs(s.value(v2)) +
           4.0 * std::fabs(dv * s.d1(v1)) + 2.0 * std::fabs(dv * s.d1(v2)) +
           dv * dv * std::fabs(s.d2(v1)) + dv * dv * std::fabs(s.d2(v2));
}

}  // namespace

TEST_SUITE("entropy") {
    TEST_CASE("generator values and derivatives") {
        EntropySpec s;
        s.two_alpha = 4;
        s.tail = {1.0, 2.0, 3.0};  // 1 + 2v + 3v^2
        CHECK(s.value(2.0) == 33.0);
        CHECK(s.d1(2.0) == 46.0);
        CHECK(s.d2(2.0) == 54.0);

        EntropySpec odd;
        odd.two_alpha = 3;  // alpha = 3/2 encodes S(v) = v^3, signed
        CHECK(odd.value(-2.0) == -8.0);
        CHECK(odd.d1(-2.0) == 12.0);
        CHECK(odd.d2(-2.0) == -12.0);

        EntropySpec flat;  // alpha = 0: S = 1
        CHECK(flat.value(-5.0) == 1.0);
        CHECK(flat.d1(-5.0) == 0.0);
        CHECK(flat.d2(-5.0) == 0.0);
    }

    TEST_CASE("pair example for S = v^4 on (1,2,3,-1)") {
        auto [eta, g] = entropy_pair_eval({1.0, 2.0, 3.0, -1.0}, EntropySpec{4, {}});
        CHECK(eta == 83.0);  // 81 + 2
        CHECK(g == 241.0);   // 243 - 2
    }

    TEST_CASE("conservation pairs reproduce consecutive moments bitwise") {
        std::mt19937 gen(31337);
        for (int i = 0; i < 200; ++i) {
            QuadratureState u = random_state(gen);
            MomentVector m = moments_from_quadrature(u);
            for (int k : {0, 1, 2}) {
                auto [eta, g] = entropy_pair_eval(u, EntropySpec{k, {}});
                CHECK(eta == m[k]);
                CHECK(g == m[k + 1]);
            }
            auto [eta3, g3] = entropy_pair_eval(u, EntropySpec{3, {}});
            CHECK(eta3 == m.m3);
            double m4 = u.rho1 * int_pow(u.v1, 4) + u.rho2 * int_pow(u.v2, 4);
            CHECK(g3 == m4);
        }
    }

    TEST_CASE("admissibility residual example: F1(1,-1; v^4) = 32") {
        auto [f1, f2] = entropy_condition_residuals(1.0, -1.0, EntropySpec{4, {}});
        CHECK(f1 == doctest::Approx(32.0).epsilon(1e-14));
        CHECK(f2 == doctest::Approx(32.0).epsilon(1e-14));
    }

    TEST_CASE("coincident abscissas give zero residuals") {
        auto [f1, f2] = entropy_condition_residuals(2.5, 2.5, EntropySpec{6, {}});
        CHECK(f1 == 0.0);
        CHECK(f2 == 0.0);
    }

    TEST_CASE("F1, F2 nonnegative on a velocity grid for strict entropies") {
        for (int two_alpha : {4, 6, 8}) {
            EntropySpec s{two_alpha, {}};
            double worst = 0.0;
            for (int i = 0; i < 100; ++i) {
                for (int j = 0; j < 100; ++j) {
                    double v1 = -10.0 + 20.0 * i / 99.0;
                    double v2 = -10.0 + 20.0 * j / 99.0;
                    auto [f1, f2] = entropy_condition_residuals(v1, v2, s);
                    double tol = 1e-12 * std::max(1.0, residual_scale(v1, v2, s));
                    worst = std::max({worst, -f1 - tol, -f2 - tol});
                }
            }
            CHECK(worst <= 0.0);
        }
    }

    TEST_CASE("first-order tails do not change F1, F2") {
        EntropySpec plain{4, {}};
        EntropySpec tailed{4, {3.5, -1.25}};  // + 3.5 - 1.25 v
        std::mt19937 gen(55);
        std::uniform_real_distribution<double> vel(-10.0, 10.0);
        for (int i = 0; i < 500; ++i) {
            double v1 = vel(gen), v2 = vel(gen);
            auto [f1a, f2a] = entropy_condition_residuals(v1, v2, plain);
            auto [f1b, f2b] = entropy_condition_residuals(v1, v2, tailed);
            double scale = std::max(1.0, residual_scale(v1, v2, tailed));
            CHECK(std::fabs(f1a - f1b) <= 1e-12 * scale);
            CHECK(std::fabs(f2a - f2b) <= 1e-12 * scale);
        }
    }

    TEST_CASE("two-packet crossing waves dissipate nothing, for every entropy") {
        // Left wave (speed -1) separates the left datum from the overlap
        // state; right wave (speed +1) separates the overlap from the right
        // datum. Both are plain contacts: no concentration, mass_rate = 0.
        MomentVector left{1.0, 1.0, 1.0, 1.0};
        MomentVector right{1.0, -1.0, 1.0, -1.0};
        MomentVector star{2.0, 0.0, 2.0, 0.0};
        for (int two_alpha : {0, 1, 2, 3, 4, 6, 8}) {
            EntropySpec s{two_alpha, {}};
            double dl = riemann_dissipation(-1.0, star, left, 0.0, s, WaveSide::left);
            double dr = riemann_dissipation(1.0, star, right, 0.0, s, WaveSide::right);
            CHECK(std::fabs(dl) <= 1e-12);
            CHECK(std::fabs(dr) <= 1e-12);
        }
        // Affine tails are conserved quantities; they cannot create
        // dissipation across an exact wave either.
        for (int two_alpha : {0, 1}) {
            EntropySpec s{two_alpha, {0.75, -2.0}};
            double dl = riemann_dissipation(-1.0, star, left, 0.0, s, WaveSide::left);
            double dr = riemann_dissipation(1.0, star, right, 0.0, s, WaveSide::right);
            CHECK(std::fabs(dl) <= 1e-12);
            CHECK(std::fabs(dr) <= 1e-12);
        }
    }
}
