#include <doctest.h>

#include <cmath>

#include "jscc/bounds.hpp"
#include "jscc/gauss.hpp"
#include "jscc/lt.hpp"
#include "jscc/sb.hpp"

using namespace jscc;

TEST_CASE("effective channel-input correlation") {
    CHECK(lt::lt_rho_tilde(0.0, 0.0, 0.7) == 0.0);
    CHECK(lt::lt_rho_tilde(30.0, 30.0, 0.7) == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(lt::lt_rho_tilde(1.0, 1.0, 0.5) == doctest::Approx(0.375).epsilon(1e-14));
    CHECK_THROWS_AS(lt::lt_rho_tilde(-0.1, 0.0, 0.5), InvalidParams);
}

TEST_CASE("rate bounds") {
    SUBCASE("independent inputs") {
        const lt::RateBounds b = lt::lt_rate_bounds(3.0, 5.0, 0.0, 2.0);
        CHECK(b.r1_max == doctest::Approx(0.5 * std::log2(1.0 + 1.5)).epsilon(1e-14));
        CHECK(b.r2_max == doctest::Approx(0.5 * std::log2(1.0 + 2.5)).epsilon(1e-14));
        CHECK(b.sum_max == doctest::Approx(0.5 * std::log2(1.0 + 4.0)).epsilon(1e-14));
    }
    SUBCASE("unit powers, rho_tilde one half") {
        const lt::RateBounds b = lt::lt_rate_bounds(1.0, 1.0, 0.5, 1.0);
        CHECK(b.sum_max == doctest::Approx(0.5 * std::log2(16.0 / 3.0)).epsilon(1e-14));
    }
    SUBCASE("correlation loosens the per-user bounds") {
        const lt::RateBounds lo = lt::lt_rate_bounds(2.0, 2.0, 0.0, 1.0);
        const lt::RateBounds hi = lt::lt_rate_bounds(2.0, 2.0, 0.9, 1.0);
        CHECK(hi.r1_max > lo.r1_max);
    }
}

TEST_CASE("distortions") {
    SUBCASE("zero rates return the priors") {
        const DistortionPair d = lt::lt_distortions(0.0, 0.0, 0.6, 1.4, 0.7);
        CHECK(d.d1 == 1.4);
        CHECK(d.d2 == 0.7);
    }
    SUBCASE("independent sources quantize independently") {
        const DistortionPair d = lt::lt_distortions(1.25, 0.5, 0.0, 2.0, 1.0);
        CHECK(d.d1 == doctest::Approx(2.0 * std::exp2(-2.5)).epsilon(1e-14));
        CHECK(d.d2 == doctest::Approx(1.0 * std::exp2(-1.0)).epsilon(1e-14));
    }
    SUBCASE("equal to exact conditioning under the scheme's joint law") {
        for (double r1 : {0.3, 0.8, 1.5, 2.5, 4.0}) {
            for (double r2 : {0.4, 1.0, 1.8, 3.0, 5.0}) {
                for (double rho : {0.1, 0.5, 0.9}) {
                    const DistortionPair d = lt::lt_distortions(r1, r2, rho, 1.0, 1.0);
                    const auto g = lt::lt_covariance(r1, r2, rho, 1.0, 1.0);
                    const auto law = gauss::condition(g, {"W1", "W2"});
                    CHECK(d.d1 == doctest::Approx(law.cond_var("U1")).epsilon(1e-10));
                    CHECK(d.d2 == doctest::Approx(law.cond_var("U2")).epsilon(1e-10));
                }
            }
        }
    }
    SUBCASE("scheme law has corr(W1,W2) = rho_tilde") {
        const auto g = lt::lt_covariance(0.8, 1.3, 0.6, 1.0, 2.0);
        const double corr =
            g.cov_of("W1", "W2") / std::sqrt(g.var("W1") * g.var("W2"));
        CHECK(corr == doctest::Approx(lt::lt_rho_tilde(0.8, 1.3, 0.6)).epsilon(1e-12));
    }
}

TEST_CASE("symmetric design point") {
    SUBCASE("zero SNR forces zero rate") {
        const auto sol = lt::lt_optimize_symmetric(0.0, 0.75);
        CHECK(std::fabs(sol.rate) < 1e-9);
        CHECK(std::fabs(sol.distortion - 1.0) < 1e-9);
    }
    SUBCASE("fixed point residual and feasibility") {
        for (double e = -3.0; e <= 6.0; e += 0.5) {
            for (double rho : {0.1, 0.5, 0.75, 0.9}) {
                const auto sol = lt::lt_optimize_symmetric(std::pow(10.0, e), rho);
                CHECK(std::fabs(sol.residual) <= 1e-10);
                CHECK(sol.individual_ok);
                const lt::RateBounds rb =
                    lt::lt_rate_bounds(std::pow(10.0, e), std::pow(10.0, e), sol.rho_tilde, 1.0);
                CHECK(sol.rate <= rb.r1_max + 1e-9);
                CHECK(sol.rate <= rb.r2_max + 1e-9);
                CHECK(2.0 * sol.rate <= rb.sum_max + 1e-9);
            }
        }
    }
    SUBCASE("high-SNR decay sigma^2 sqrt((1-rho)/2S)") {
        const double s = 1e6, rho = 0.75;
        const auto sol = lt::lt_optimize_symmetric(s, rho);
        CHECK(sol.distortion ==
              doctest::Approx(std::sqrt((1.0 - rho) / (2.0 * s))).epsilon(0.02));
    }
    SUBCASE("low-SNR closed-form approximation") {
        const double s = 1e-2, rho = 0.9;
        const auto sol = lt::lt_optimize_symmetric(s, rho);
        const double rt = sol.rho_tilde;
        const double sbar = s * (1.0 + rt);
        const double root = std::sqrt(1.0 - rt * rt);
        const double approx = std::exp2(-sbar) *
                              (1.0 - rho * rho * (1.0 - root * std::exp2(-sbar))) / root;
        CHECK(sol.distortion == doctest::Approx(approx).epsilon(0.01));
    }
    SUBCASE("dominates separation, respects the converse") {
        for (double e = -3.0; e <= 6.0; e += 0.25) {
            const double s = std::pow(10.0, e);
            for (double rho : {0.1, 0.5, 0.75}) {
                const double d = lt::lt_optimize_symmetric(s, rho).distortion;
                CHECK(d <= sb::sb_gmac_distortion(s, rho) + 1e-9);
                CHECK(d >= nc::nc_distortion(s, rho) - 1e-9);
            }
        }
    }
    SUBCASE("asymptotically tight against the converse") {
        for (double rho : {0.1, 0.5, 0.75}) {
            const double ratio = lt::lt_optimize_symmetric(1e5, rho).distortion /
                                 nc::nc_distortion(1e5, rho);
            CHECK(ratio <= 1.02);
            CHECK(ratio >= 1.0 - 1e-9);
        }
    }
}

TEST_CASE("multi-user recipe") {
    SUBCASE("single user matches the point-to-point curve") {
        for (double s : {0.2, 2.0, 20.0})
            CHECK(lt::lt_multiuser(1, s, 0.0) == doctest::Approx(1.0 / (1.0 + s)).epsilon(1e-9));
    }
    SUBCASE("two users match the symmetric design point") {
        for (double s : {0.5, 5.0, 100.0})
            for (double rho : {0.2, 0.8})
                CHECK(lt::lt_multiuser(2, s, rho) ==
                      doctest::Approx(lt::lt_optimize_symmetric(s, rho).distortion)
                          .epsilon(1e-9));
    }
}
