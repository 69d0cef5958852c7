#ifndef JSCC_POWER_OPT_HPP
#define JSCC_POWER_OPT_HPP

namespace jscc::popt {

/// Section-IV normalization: unit source variances, unit channel noise.

/// Weighted uncoded objective beta1 D1(a,b) + beta2 D2(a,b).
double af_weighted_objective(double a, double b, double rho, double beta1, double beta2);

/**
 * For fixed power a of user 1 and rho > 0, the unweighted sum D1 + D2 is
 * strictly decreasing in b on [0, c) and strictly increasing on (c, inf);
 * returns that critical power c.  Throws DegenerateCorrelation at rho = 0,
 * where the objective is monotone decreasing in b.
 */
double af_critical_power(double a, double rho);

struct PowerSolution {
    double a_star = 0.0;
    double b_star = 0.0;
    double d_min = 0.0;
    bool a_at_bound = false;    ///< a* = P1 binds
    bool b_at_bound = false;    ///< b* = P2 binds
    double kkt_residual = 0.0;  ///< max first-order violation at the solution
};

/// Global minimizer of the weighted uncoded objective on [0,P1] x [0,P2]:
/// closed-form critical points, boundary line searches, and damped Newton
/// from a 3x3 grid of interior starts.
PowerSolution optimize_af_powers(double p1, double p2, double rho, double beta1 = 1.0,
                                 double beta2 = 1.0);

/// Weighted quantize-then-correlate objective at rates (R1, R2).
double lt_weighted_objective(double r1, double r2, double rho, double sigma1_sq,
                             double sigma2_sq, double beta1, double beta2);

struct LtPowerResult {
    double r1 = 0.0, r2 = 0.0;
    double rho_tilde = 0.0;
    double objective = 0.0;
};

/// Best weighted objective at powers (a, b): rates on the sum-rate
/// boundary, split chosen by scalar search with the rho_tilde consistency
/// fixed point solved per split.
LtPowerResult lt_optimize_asymmetric(double a, double b, double rho, double beta1 = 1.0,
                                     double beta2 = 1.0);

enum class Scheme { AF, SB, LT };

/**
 * Falsification check of the full-power claim for the coded schemes: true
 * iff the scheme's objective at (P1, P2) is no worse than at any point of
 * a 20 x 20 interior power grid.  AF is handled by optimize_af_powers and
 * rejected here.
 */
bool verify_full_power_optimal(Scheme scheme, double p1, double p2, double rho);

} // namespace jscc::popt

#endif
