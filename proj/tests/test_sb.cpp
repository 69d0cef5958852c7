#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "jscc/bounds.hpp"
#include "jscc/errors.hpp"
#include "jscc/sb.hpp"

using namespace jscc;

TEST_CASE("rate region membership") {
    SUBCASE("independent sources decouple to single-user curves") {
        const double rho = 0.0;
        for (double r1 : {0.2, 1.0, 2.5}) {
            for (double r2 : {0.1, 0.7}) {
                const double d1 = std::exp2(-2.0 * r1);
                const double d2 = std::exp2(-2.0 * r2);
                CHECK(sb::sb_region_contains({r1, r2}, d1, d2, 1.0, 1.0, rho));
                CHECK_FALSE(sb::sb_region_contains({r1, r2}, 0.9 * d1, d2, 1.0, 1.0, rho));
            }
        }
    }
    SUBCASE("beta term equals 2 at rho=0") {
        CHECK(sb::sb_beta(0.3, 0.7, 1.0, 1.0, 0.0) == 2.0);
    }
    SUBCASE("symmetric boundary point from the distortion-rate curve") {
        const double rho = 0.75, r = 1.0;
        const double d = sb::sb_symmetric_distortion_from_rate(r, rho);
        CHECK(sb::sb_region_contains({r, r}, d, d, 1.0, 1.0, rho));
        CHECK_FALSE(sb::sb_region_contains({r - 1e-3, r - 1e-3}, d, d, 1.0, 1.0, rho));
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(sb::sb_region_contains({-0.1, 0.0}, 0.5, 0.5, 1.0, 1.0, 0.3),
                        InvalidParams);
        CHECK_THROWS_AS(sb::sb_region_contains({0.1, 0.1}, 0.0, 0.5, 1.0, 1.0, 0.3),
                        InvalidParams);
        CHECK_THROWS_AS(sb::sb_region_contains({0.1, 0.1}, 0.5, 0.5, 1.0, 1.0, 1.0),
                        InvalidParams);
    }
}

TEST_CASE("symmetric distortion from rate") {
    SUBCASE("zero rate gives the prior") {
        CHECK(sb::sb_symmetric_distortion_from_rate(0.0, 0.6) == 1.0);
    }
    SUBCASE("independent sources give 2^-2R") {
        CHECK(sb::sb_symmetric_distortion_from_rate(1.5, 0.0) ==
              doctest::Approx(std::exp2(-3.0)).epsilon(1e-14));
    }
    SUBCASE("R=1, rho=0.75") {
        // 2^-4 (1-0.75^2) + 0.75^2 2^-8 = 0.029541015625 exactly
        CHECK(sb::sb_symmetric_distortion_from_rate(1.0, 0.75) ==
              doctest::Approx(std::sqrt(0.029541015625)).epsilon(1e-14));
    }
}

TEST_CASE("separation over the GMAC") {
    SUBCASE("zero SNR") { CHECK(sb::sb_gmac_distortion(0.0, 0.75) == 1.0); }
    SUBCASE("bound form holds exactly by construction") {
        for (double e = -3.0; e <= 6.0; e += 0.5) {
            const double s = std::pow(10.0, e);
            for (double rho : {0.1, 0.5, 0.75}) {
                const double sp = std::exp2(4.0 * sb::sb_gmac_rate(s));
                const double bound =
                    std::sqrt((1.0 - rho * rho) / sp + rho * rho / (sp * sp));
                CHECK(sb::sb_gmac_distortion(s, rho) == doctest::Approx(bound).epsilon(1e-12));
            }
        }
    }
    SUBCASE("high-SNR decay constant sqrt(1-rho^2)") {
        const double s = 1e6, rho = 0.75;
        const double sp = std::exp2(4.0 * sb::sb_gmac_rate(s));
        const double v = sb::sb_gmac_distortion(s, rho) * std::sqrt(sp);
        CHECK(v == doctest::Approx(std::sqrt(1.0 - rho * rho)).epsilon(0.02));
    }
    SUBCASE("low-SNR lower bound is respected") {
        // rho^2 2^{-4S} + (1-rho^2) 2^{-2S} at S=1e-3, rho=0.9
        const double s = 1e-3, rho = 0.9;
        const double rhs = rho * rho * std::exp2(-4.0 * s) +
                           (1.0 - rho * rho) * std::exp2(-2.0 * s);
        CHECK(sb::sb_gmac_distortion(s, rho) >= rhs - 1e-9);
    }
    SUBCASE("never beats the converse bound") {
        for (double e = -3.0; e <= 6.0; e += 0.25)
            for (double rho : {0.1, 0.5, 0.9})
                CHECK(sb::sb_gmac_distortion(std::pow(10.0, e), rho) >=
                      nc::nc_distortion(std::pow(10.0, e), rho) - 1e-12);
    }
    SUBCASE("monotone in SNR and in rho") {
        for (double rho : {0.1, 0.6}) {
            double prev = sb::sb_gmac_distortion(1e-3, rho);
            for (double e = -2.5; e <= 5.0; e += 0.5) {
                const double d = sb::sb_gmac_distortion(std::pow(10.0, e), rho);
                CHECK(d <= prev + 1e-12);
                prev = d;
            }
        }
        for (double e : {-1.0, 0.0, 1.0, 3.0}) {
            const double s = std::pow(10.0, e);
            CHECK(sb::sb_gmac_distortion(s, 0.8) <= sb::sb_gmac_distortion(s, 0.2) + 1e-12);
        }
    }
}

TEST_CASE("asymmetric-power separation evaluation") {
    SUBCASE("symmetric input reduces to the closed form") {
        for (double s : {0.5, 2.0, 50.0}) {
            const sb::SbAsymmetric r = sb::sb_gmac_asymmetric(s, s, 1.0, 0.6);
            CHECK(r.d1 == doctest::Approx(sb::sb_gmac_distortion(s, 0.6)).epsilon(1e-6));
            CHECK(r.d2 == doctest::Approx(r.d1).epsilon(1e-6));
            CHECK(r.r1 + r.r2 ==
                  doctest::Approx(0.5 * std::log2(1.0 + 2.0 * s)).epsilon(1e-9));
        }
    }
    SUBCASE("more power never hurts") {
        const sb::SbAsymmetric lo = sb::sb_gmac_asymmetric(1.0, 2.0, 1.0, 0.5);
        const sb::SbAsymmetric hi = sb::sb_gmac_asymmetric(2.0, 4.0, 1.0, 0.5);
        CHECK(std::max(hi.d1, hi.d2) <= std::max(lo.d1, lo.d2) + 1e-9);
    }
    SUBCASE("zero power returns the priors") {
        const sb::SbAsymmetric r = sb::sb_gmac_asymmetric(0.0, 0.0, 1.0, 0.5, 1.5, 0.5);
        CHECK(r.d1 == 1.5);
        CHECK(r.d2 == 0.5);
    }
}

TEST_CASE("multi-user separation recipe") {
    SUBCASE("single user is the point-to-point curve") {
        for (double s : {0.1, 1.0, 10.0})
            CHECK(sb::sb_multiuser(1, s, 0.0) == doctest::Approx(1.0 / (1.0 + s)).epsilon(1e-9));
    }
    SUBCASE("two users match the symmetric closed form") {
        for (double s : {0.5, 5.0})
            for (double rho : {0.2, 0.8})
                CHECK(sb::sb_multiuser(2, s, rho) ==
                      doctest::Approx(sb::sb_gmac_distortion(s, rho)).epsilon(1e-9));
    }
    SUBCASE("zero SNR gives the prior") { CHECK(sb::sb_multiuser(5, 0.0, 0.5) == 1.0); }
}
