#ifndef JSCC_BOUNDS_HPP
#define JSCC_BOUNDS_HPP

namespace jscc::nc {

/// SNR where the converse bound switches from the uncoded expression to
/// the square-root branch: rho / (1 - rho^2).
double nc_threshold(double rho);

/**
 * Converse (necessary-condition) lower bound on the symmetric per-user
 * distortion over the GMAC.  Continuous at the branch point, where both
 * branches equal sigma^2 (1 - rho).
 */
double nc_distortion(double snr, double rho, double sigma_sq = 1.0);

} // namespace jscc::nc

#endif
