#include <doctest.h>

#include <cmath>

#include "jscc/af.hpp"
#include "jscc/bounds.hpp"
#include "jscc/gauss.hpp"
#include "jscc/mc.hpp"

using namespace jscc;

TEST_CASE("two-user distortions") {
    SUBCASE("optimal-allocation table, first row") {
        const af::AfParams p{10.0, 1.0, 1.0, 1.0, 0.5, 1.0};
        const DistortionPair d = af::af_distortions(p);
        CHECK(std::fabs(d.sum() - 0.6760) <= 5e-4);
    }
    SUBCASE("no signal returns the priors") {
        const af::AfParams p{0.0, 0.0, 2.0, 0.5, 0.3, 1.0};
        const DistortionPair d = af::af_distortions(p);
        CHECK(d.d1 == 2.0);
        CHECK(d.d2 == 0.5);
    }
    SUBCASE("user swap symmetry") {
        const af::AfParams p{3.0, 7.0, 1.5, 0.6, 0.4, 0.8};
        const af::AfParams q{7.0, 3.0, 0.6, 1.5, 0.4, 0.8};
        const DistortionPair dp = af::af_distortions(p);
        const DistortionPair dq = af::af_distortions(q);
        CHECK(dp.d1 == doctest::Approx(dq.d2).epsilon(1e-15));
        CHECK(dp.d2 == doctest::Approx(dq.d1).epsilon(1e-15));
    }
    SUBCASE("agrees with exact conditioning") {
        for (double rho : {0.0, 0.3, 0.8}) {
            const af::AfParams p{4.0, 2.5, 1.3, 0.9, rho, 0.7};
            const DistortionPair d = af::af_distortions(p);
            const auto law = gauss::condition(af::af_joint(p), {"Y"});
            CHECK(d.d1 == doctest::Approx(law.cond_var("U1")).epsilon(1e-12));
            CHECK(d.d2 == doctest::Approx(law.cond_var("U2")).epsilon(1e-12));
        }
    }
    SUBCASE("matches the Monte Carlo pipeline") {
        const af::AfParams p{5.0, 5.0, 1.0, 1.0, 0.5, 1.0};
        const DistortionPair d = af::af_distortions(p);
        const mc::SimResult r = mc::simulate_af_gmac(p, 1000000, 17);
        CHECK(std::fabs(r.d1_hat - d.d1) <= 3.0 * r.stderr1);
        CHECK(std::fabs(r.d2_hat - d.d2) <= 3.0 * r.stderr2);
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(af::af_distortions({-1.0, 1.0, 1.0, 1.0, 0.5, 1.0}), InvalidParams);
        CHECK_THROWS_AS(af::af_distortions({1.0, 1.0, 1.0, 1.0, 1.0, 1.0}), InvalidParams);
        CHECK_THROWS_AS(af::af_distortions({1.0, 1.0, 1.0, 1.0, -0.1, 1.0}), InvalidParams);
        CHECK_THROWS_AS(af::af_distortions({1.0, 1.0, 1.0, 1.0, 0.5, 0.0}), InvalidParams);
    }
}

TEST_CASE("symmetric curve") {
    SUBCASE("zero SNR returns the source variance") {
        CHECK(af::af_symmetric(0.0, 0.6, 1.7) == 1.7);
    }
    SUBCASE("high-SNR floor sigma^2 (1-rho)/2") {
        CHECK(std::fabs(af::af_symmetric(1e6, 0.75, 1.0) - 0.125) < 1e-5);
    }
    SUBCASE("low-SNR slope sigma^2 (1+rho)^2") {
        const double rho = 0.6, s2 = 1.3, h = 1e-6;
        const double slope = std::fabs(af::af_symmetric(h, rho, s2) - s2) / h;
        CHECK(slope == doctest::Approx(s2 * (1.0 + rho) * (1.0 + rho)).epsilon(1e-3));
    }
    SUBCASE("monotone decrease toward the floor") {
        const double rho = 0.4;
        double prev = af::af_symmetric(0.0, rho);
        for (double e = -3.0; e <= 6.0; e += 0.25) {
            const double d = af::af_symmetric(std::pow(10.0, e), rho);
            CHECK(d < prev);
            CHECK(d >= (1.0 - rho) / 2.0);
            prev = d;
        }
    }
}

TEST_CASE("multi-user curve") {
    SUBCASE("N=2 reduces to the symmetric two-user form") {
        for (double rho : {0.0, 0.2, 0.5, 0.8}) {
            for (double p : {0.01, 0.5, 1.0, 10.0, 1000.0}) {
                const double d2u = af::af_symmetric(p, rho, 1.0);
                const double dn = af::af_multiuser({2, p, rho, 1.0});
                CHECK(dn == doctest::Approx(d2u).epsilon(1e-12));
            }
        }
    }
    SUBCASE("many users approach 1 - rho") {
        CHECK(std::fabs(af::af_multiuser({1000000, 1.0, 0.8, 1.0}) - 0.2) < 1e-4);
    }
    SUBCASE("high power approaches (N-1)/N (1-rho)") {
        CHECK(std::fabs(af::af_multiuser({3, 1e6, 0.8, 1.0}) - 2.0 / 3.0 * 0.2) < 1e-4);
    }
    SUBCASE("single user") {
        const double p = 2.4, nsq = 0.9;
        CHECK(af::af_multiuser({1, p, 0.0, nsq}) == doctest::Approx(nsq / (p + nsq)).epsilon(1e-14));
    }
    SUBCASE("crossover in N between low and high SNR") {
        const double rho = 0.8;
        double prev_low = af::af_multiuser({2, 0.1, rho, 1.0});
        double prev_high = af::af_multiuser({2, 10.0, rho, 1.0});
        for (long n = 3; n <= 10; ++n) {
            const double low = af::af_multiuser({n, 0.1, rho, 1.0});
            const double high = af::af_multiuser({n, 10.0, rho, 1.0});
            CHECK(low <= prev_low + 1e-12);
            CHECK(high >= prev_high - 1e-12);
            prev_low = low;
            prev_high = high;
        }
    }
}
