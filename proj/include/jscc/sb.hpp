#ifndef JSCC_SB_HPP
#define JSCC_SB_HPP

#include "jscc/types.hpp"

namespace jscc::sb {

struct RatePair {
    double r1 = 0.0; ///< bits per source sample
    double r2 = 0.0;

    void validate() const;
};

/// beta term of the two-terminal quadratic Gaussian rate region.
double sb_beta(double d1, double d2, double sigma1_sq, double sigma2_sq, double rho);

/// Membership test for the two-terminal rate region at distortions
/// (d1, d2); inequalities checked with 1e-12 slack.
bool sb_region_contains(const RatePair& r, double d1, double d2, double sigma1_sq,
                        double sigma2_sq, double rho);

/// Symmetric distortion when each unit-variance source is encoded at
/// `rate_bits`: sqrt(2^{-4R}(1-rho^2) + rho^2 2^{-8R}).
double sb_symmetric_distortion_from_rate(double rate_bits, double rho);

/// Per-user rate over the symmetric GMAC: half the sum capacity with
/// independent inputs, 0.25 log2(1 + 2S).
double sb_gmac_rate(double snr);

/// End-to-end symmetric separation-based distortion over the GMAC.
double sb_gmac_distortion(double snr, double rho);

struct SbAsymmetric {
    double d1 = 0.0, d2 = 0.0;
    double r1 = 0.0, r2 = 0.0; ///< rate split actually used (sum = sum capacity)
};

/**
 * Asymmetric-power separation evaluation over the GMAC.  The sum rate is
 * the independent-input sum capacity; the split across users is chosen by
 * scalar search (resolved below 1e-9 in rate).  `minimize_sum` switches
 * the search objective from max(D1,D2) to D1+D2.
 */
SbAsymmetric sb_gmac_asymmetric(double p1, double p2, double sigma_n_sq, double rho,
                                double sigma1_sq = 1.0, double sigma2_sq = 1.0,
                                bool minimize_sum = false);

/// Symmetric N-user separation curve: Gaussian forward test channels with
/// the quantizer noise pinned by the independent-input sum capacity.
/// For N > 2 this is a recipe for qualitative comparison, not an exact
/// rate region.
double sb_multiuser(long n_users, double snr, double rho);

} // namespace jscc::sb

#endif
