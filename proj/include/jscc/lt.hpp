#ifndef JSCC_LT_HPP
#define JSCC_LT_HPP

#include "jscc/gauss.hpp"
#include "jscc/types.hpp"

namespace jscc::lt {

/// Channel-input correlation left after quantizing at rates (R1, R2):
/// rho * sqrt((1 - 2^{-2R1})(1 - 2^{-2R2})).
double lt_rho_tilde(double r1, double r2, double rho);

struct RateBounds {
    double r1_max = 0.0;
    double r2_max = 0.0;
    double sum_max = 0.0;
};

/// Rate constraints of the correlated-codebook scheme for powers (p1, p2)
/// and channel-input correlation rho_tilde, in bits.
RateBounds lt_rate_bounds(double p1, double p2, double rho_tilde, double sigma_n_sq);

/// Distortions of the quantize-then-correlate scheme at rates (R1, R2).
DistortionPair lt_distortions(double r1, double r2, double rho, double sigma1_sq,
                              double sigma2_sq);

/// Joint law of (U1, U2, W1, W2) implied by the scheme, with the W1-W2
/// cross term reconstructed so that corr(W1, W2) equals lt_rho_tilde.
gauss::JointGaussian lt_covariance(double r1, double r2, double rho, double sigma1_sq,
                                   double sigma2_sq);

struct LtSymmetricSolution {
    double distortion = 1.0;
    double rate = 0.0;
    double rho_tilde = 0.0;
    double residual = 0.0;    ///< fixed-point residual at the solution
    bool individual_ok = true;///< per-user rate constraints hold at the solution
    int iterations = 0;
};

/**
 * Symmetric design point: the largest common rate R with the sum-rate
 * constraint met with equality, solved as a fixed point in rho_tilde
 * (damped iteration with bisection fallback; residual tolerance 1e-10,
 * budget 200 iterations).  Unit source variance.
 */
LtSymmetricSolution lt_optimize_symmetric(double snr, double rho);

/// Symmetric N-user curve by the same sum-rate-equality recipe with
/// Gaussian forward test channels; qualitative for N > 2.
double lt_multiuser(long n_users, double snr, double rho);

} // namespace jscc::lt

#endif
