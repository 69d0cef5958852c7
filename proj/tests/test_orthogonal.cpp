#include <doctest.h>

#include <cmath>

#include "jscc/mc.hpp"
#include "jscc/orthogonal.hpp"
#include "jscc/sb.hpp"

using namespace jscc;

TEST_CASE("uncoded distortions over parallel channels") {
    SUBCASE("independent symmetric case collapses to 1/(1+S)") {
        for (double s : {0.5, 1.0, 8.0}) {
            orth::OrthParams p;
            p.p1 = p.p2 = s;
            const DistortionPair d = orth::orth_af_distortions(p);
            CHECK(d.d1 == doctest::Approx(1.0 / (1.0 + s)).epsilon(1e-14));
            CHECK(d.d2 == doctest::Approx(d.d1).epsilon(1e-14));
        }
    }
    SUBCASE("no power returns the priors") {
        orth::OrthParams p;
        p.p1 = p.p2 = 0.0;
        p.sigma1_sq = 1.3;
        p.sigma2_sq = 0.4;
        p.rho = 0.6;
        const DistortionPair d = orth::orth_af_distortions(p);
        CHECK(d.d1 == 1.3);
        CHECK(d.d2 == 0.4);
    }
    SUBCASE("agrees with exact conditioning and the Monte Carlo pipeline") {
        orth::OrthParams p;
        p.p1 = 2.0;
        p.p2 = 5.0;
        p.sigma1_sq = 1.5;
        p.sigma2_sq = 0.8;
        p.rho = 0.55;
        p.sigma_n1_sq = 0.9;
        p.sigma_n2_sq = 1.4;
        const DistortionPair d = orth::orth_af_distortions(p);
        const auto law = gauss::condition(orth::orth_af_joint(p), {"Y1", "Y2"});
        CHECK(d.d1 == doctest::Approx(law.cond_var("U1")).epsilon(1e-12));
        CHECK(d.d2 == doctest::Approx(law.cond_var("U2")).epsilon(1e-12));

        const mc::SimResult r = mc::simulate_af_orthogonal(p, 1000000, 23);
        CHECK(std::fabs(r.d1_hat - d.d1) <= 3.0 * r.stderr1);
        CHECK(std::fabs(r.d2_hat - d.d2) <= 3.0 * r.stderr2);
    }
}

TEST_CASE("symmetric separation and uncoded curves") {
    SUBCASE("rho=0 makes them equal") {
        for (double s : {0.1, 1.0, 30.0}) {
            CHECK(orth::orth_sb_distortion(s, 0.0) ==
                  doctest::Approx(1.0 / (1.0 + s)).epsilon(1e-14));
            CHECK(orth::orth_af_symmetric(s, 0.0) ==
                  doctest::Approx(1.0 / (1.0 + s)).epsilon(1e-14));
        }
    }
    SUBCASE("zero SNR returns the prior") {
        CHECK(orth::orth_sb_distortion(0.0, 0.7) == 1.0);
        CHECK(orth::orth_af_symmetric(0.0, 0.7) == 1.0);
    }
    SUBCASE("separation formula matches the rate route") {
        for (double e = -2.0; e <= 5.0; e += 0.5) {
            const double s = std::pow(10.0, e);
            for (double rho : {0.3, 0.7}) {
                const double c = 1.0 - rho * rho;
                const double direct = std::sqrt(c / ((1.0 + s) * (1.0 + s)) +
                                                rho * rho / std::pow(1.0 + s, 4.0));
                CHECK(orth::orth_sb_distortion(s, rho) ==
                      doctest::Approx(direct).epsilon(1e-12));
            }
        }
    }
    SUBCASE("uncoded symmetric equals the general form") {
        for (double s : {0.2, 3.0, 40.0}) {
            orth::OrthParams p;
            p.p1 = p.p2 = s;
            p.rho = 0.7;
            CHECK(orth::orth_af_symmetric(s, 0.7) ==
                  doctest::Approx(orth::orth_af_distortions(p).d1).epsilon(1e-12));
        }
    }
    SUBCASE("high-SNR decay constants") {
        const double s = 1e6, rho = 0.7;
        CHECK(orth::orth_sb_distortion(s, rho) * s ==
              doctest::Approx(std::sqrt(1.0 - rho * rho)).epsilon(0.02));
        CHECK(orth::orth_af_symmetric(s, rho) * s == doctest::Approx(1.0).epsilon(0.02));
    }
}

TEST_CASE("gap bounds") {
    SUBCASE("envelope chain at a spot check") {
        const auto g = orth::orth_gap_bounds(10.0, 0.7);
        const double dsb = orth::orth_sb_distortion(10.0, 0.7);
        const double daf = orth::orth_af_symmetric(10.0, 0.7);
        CHECK(g.d_lb <= dsb);
        CHECK(dsb <= daf);
        CHECK(daf <= g.d_ub);
    }
    SUBCASE("pointwise chain and gap bounds on the grid") {
        for (double e = -3.0; e <= 4.0; e += 0.5) {
            const double s = std::pow(10.0, e);
            for (double rho = 0.1; rho < 0.95; rho += 0.1) {
                const auto g = orth::orth_gap_bounds(s, rho);
                const double dsb = orth::orth_sb_distortion(s, rho);
                const double daf = orth::orth_af_symmetric(s, rho);
                CHECK(g.d_lb <= dsb + 1e-12);
                CHECK(dsb <= daf + 1e-12);
                CHECK(daf <= g.d_ub + 1e-12);
                const double gap = daf - dsb;
                CHECK(gap <= rho * rho + 1e-12);
                CHECK(gap <= g.gap_rho + 1e-12);
                CHECK(gap <= g.gap_hi_snr + 1e-12);
                CHECK(gap <= g.gap_lo_snr + 1e-12);
            }
        }
    }
    SUBCASE("rho=0 collapses everything to 1/(1+S)") {
        const double s = 2.5;
        const auto g = orth::orth_gap_bounds(s, 0.0);
        const double expect = 1.0 / (1.0 + s);
        CHECK(g.d_lb == doctest::Approx(expect).epsilon(1e-12));
        CHECK(g.d_ub == doctest::Approx(expect).epsilon(1e-12));
        CHECK(g.gap_hi_snr == 0.0);
        CHECK(g.gap_rho == 0.0);
        CHECK(orth::orth_af_symmetric(s, 0.0) ==
              doctest::Approx(orth::orth_sb_distortion(s, 0.0)).epsilon(1e-12));
    }
    SUBCASE("uncoded is never better than separation, equality only at rho=0") {
        for (double e = -2.0; e <= 4.0; e += 0.25) {
            const double s = std::pow(10.0, e);
            CHECK(orth::orth_af_symmetric(s, 0.6) > orth::orth_sb_distortion(s, 0.6));
        }
    }
}
