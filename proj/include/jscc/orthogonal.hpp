#ifndef JSCC_ORTHOGONAL_HPP
#define JSCC_ORTHOGONAL_HPP

#include "jscc/gauss.hpp"
#include "jscc/types.hpp"

namespace jscc::orth {

/// Two non-interfering Gaussian channels Y_i = X_i + N_i.
struct OrthParams {
    double p1 = 1.0, p2 = 1.0;
    double sigma1_sq = 1.0, sigma2_sq = 1.0;
    double rho = 0.0;
    double sigma_n1_sq = 1.0, sigma_n2_sq = 1.0;

    void validate() const;
};

/// Uncoded distortions with the joint decoder E[U_i | Y1, Y2].
DistortionPair orth_af_distortions(const OrthParams& p);

/// Symmetric separation-based distortion; separation is optimal here, so
/// the per-user rate is the point-to-point capacity 0.5 log2(1+S).
double orth_sb_distortion(double snr, double rho);

/// Symmetric uncoded distortion.
double orth_af_symmetric(double snr, double rho);

struct GapBounds {
    double d_lb = 0.0;          ///< lower bound on both schemes
    double d_ub = 0.0;          ///< upper bound on the uncoded scheme
    double gap_hi_snr = 0.0;    ///< gap bound that vanishes as S grows
    double gap_lo_snr = 0.0;    ///< gap bound that vanishes as S -> 0
    double gap_rho = 0.0;       ///< gap bound <= rho^2, small for small rho
};

/// Closed-form envelope around D(AF) and D(SB) plus the three gap bounds.
GapBounds orth_gap_bounds(double snr, double rho);

/// The (U1, U2, Y1, Y2) model behind orth_af_distortions.
gauss::JointGaussian orth_af_joint(const OrthParams& p);

} // namespace jscc::orth

#endif
