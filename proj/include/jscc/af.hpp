#ifndef JSCC_AF_HPP
#define JSCC_AF_HPP

#include "jscc/gauss.hpp"
#include "jscc/types.hpp"

namespace jscc::af {

/// Two-user uncoded transmission over the Gaussian MAC.
struct AfParams {
    double p1 = 1.0;        ///< transmit power of user 1
    double p2 = 1.0;        ///< transmit power of user 2
    double sigma1_sq = 1.0; ///< source variance, user 1
    double sigma2_sq = 1.0; ///< source variance, user 2
    double rho = 0.0;       ///< source correlation, in [0,1)
    double sigma_n_sq = 1.0;///< channel noise variance

    void validate() const;
};

/// Symmetric N-user setting: unit source variances, common pairwise
/// correlation, common per-user power.
struct MultiUserParams {
    long n_users = 2;
    double power = 1.0;
    double rho = 0.0;
    double noise_var = 1.0;

    void validate() const;
};

/// MMSE distortions of the uncoded scheme with full-power scaling
/// sqrt(P_i)/sigma_i and the linear decoder E[U_i|Y].
DistortionPair af_distortions(const AfParams& p);

/// Symmetric two-user distortion as a function of SNR = P/sigma_N^2.
/// Decreases strictly from sigma^2 at S=0 to sigma^2 (1-rho)/2.
double af_symmetric(double snr, double rho, double sigma_sq = 1.0);

/// Symmetric per-user distortion for N users.
double af_multiuser(const MultiUserParams& p);

/// The (U1, U2, Y) model behind af_distortions; used by the Monte Carlo
/// decoder and the conditioning cross-check.
gauss::JointGaussian af_joint(const AfParams& p);

} // namespace jscc::af

#endif
