#ifndef JSCC_SIDE_INFO_HPP
#define JSCC_SIDE_INFO_HPP

#include <string>
#include <vector>

#include "jscc/gauss.hpp"
#include "jscc/types.hpp"

namespace jscc::si {

enum class Availability { none, encoders_only, decoder_only, both };

std::string to_string(Availability a);
Availability availability_from_string(const std::string& s);

/// Cross observations Z1 = s1 U2 + V1, Z2 = s2 U1 + V2 with unit-variance
/// V_i, available at the encoders and/or the decoder.
struct SideInfoSpec {
    double s1 = 0.0;
    double s2 = 0.0;
    Availability availability = Availability::none;

    void validate() const;
    bool at_encoders() const {
        return availability == Availability::encoders_only || availability == Availability::both;
    }
    bool at_decoder() const {
        return availability == Availability::decoder_only || availability == Availability::both;
    }
};

/// Encoder mixing weights L_i = a_i U_i + b_i Z_i, stored normalized so
/// that var(L_i) = 1 under the given side-information model.
struct LinearCombo {
    double a1 = 1.0, b1 = 0.0;
    double a2 = 1.0, b2 = 0.0;

    static LinearCombo normalized(double a1, double b1, double a2, double b2,
                                  const SideInfoSpec& spec, double rho);
    /// Direction parametrization (a_i, b_i) ~ (cos t_i, sin t_i).
    static LinearCombo from_angles(double theta1, double theta2, const SideInfoSpec& spec,
                                   double rho);
    /// The plain no-mixing combo (1, 0, 1, 0).
    static LinearCombo identity(const SideInfoSpec& spec, double rho);
};

/// Exact joint law of (U1, U2, Z1, Z2, L1, L2), unit source variances.
gauss::JointGaussian build_si_joint(const SideInfoSpec& spec, const LinearCombo& combo,
                                    double rho);

/// (U1, U2, Z1, Z2, Y) with Y = sqrt(P1) L1 + sqrt(P2) L2 + N.
gauss::JointGaussian af_si_joint(const SideInfoSpec& spec, const LinearCombo& combo,
                                 double p1, double p2, double sigma_n_sq, double rho);

/// (U1, U2, Z1, Z2, Y1, Y2) with Y_i = sqrt(P_i) L_i + N_i.
gauss::JointGaussian orth_af_si_joint(const SideInfoSpec& spec, const LinearCombo& combo,
                                      double p1, double p2, double sigma_n1_sq,
                                      double sigma_n2_sq, double rho);

/// Uncoded distortions over the GMAC with side information; the decoder
/// conditions on (Y, Z1, Z2) when it has the side channel, on Y otherwise.
DistortionPair af_si_distortion(const SideInfoSpec& spec, const LinearCombo& combo,
                                double p1, double p2, double sigma_n_sq, double rho);

/// Same over orthogonal channels.
DistortionPair orth_af_si_distortion(const SideInfoSpec& spec, const LinearCombo& combo,
                                     double p1, double p2, double sigma_n1_sq,
                                     double sigma_n2_sq, double rho);

struct AfSiOptimum {
    LinearCombo combo;
    double d1 = 0.0, d2 = 0.0;
    double d_sum = 0.0;
};

/// Best encoder mixing for the uncoded scheme (sum-distortion objective).
/// Without encoder side information the combo is fixed at (1,0,1,0).
AfSiOptimum optimize_af_si(const SideInfoSpec& spec, double p1, double p2,
                           double sigma_n_sq, double rho);
AfSiOptimum optimize_orth_af_si(const SideInfoSpec& spec, double p1, double p2,
                                double sigma_n1_sq, double sigma_n2_sq, double rho);

/// Result of a coded-scheme evaluation under the Gaussian test-channel
/// model W_i = L_i + Q_i.
struct SiSchemeResult {
    double d1 = 0.0, d2 = 0.0;
    double d_sum = 0.0;
    double q1 = 0.0, q2 = 0.0; ///< quantizer noise variances at the solution
    double r1 = 0.0, r2 = 0.0; ///< required per-user rates at the solution
    bool feasible = true;
};

/// Separation-based scheme with side information over the GMAC: channel
/// codewords independent of everything, so the rate caps are the
/// independent-input capacities; quantizer noises minimize distortion
/// subject to the information constraints.
SiSchemeResult sb_si_distortion(const SideInfoSpec& spec, const LinearCombo& combo,
                                double p1, double p2, double sigma_n_sq, double rho);

/// Correlated-codebook scheme with side information over the GMAC: the
/// channel inputs are scaled test-channel outputs, so the rate caps are
/// mutual informations of the assembled joint law (conditioned on Z when
/// the decoder has it).
SiSchemeResult lt_si_distortion(const SideInfoSpec& spec, const LinearCombo& combo,
                                double p1, double p2, double sigma_n_sq, double rho);

/// Separation over orthogonal channels (per-channel capacities as caps).
SiSchemeResult orth_sb_si_distortion(const SideInfoSpec& spec, const LinearCombo& combo,
                                     double p1, double p2, double sigma_n1_sq,
                                     double sigma_n2_sq, double rho);

/// Encoder-mixing optimization for the coded schemes, symmetric setup
/// (P1 = P2, s1 = s2); used by the side-information sweeps.
SiSchemeResult optimize_sb_si(const SideInfoSpec& spec, double power, double sigma_n_sq,
                              double rho);
SiSchemeResult optimize_lt_si(const SideInfoSpec& spec, double power, double sigma_n_sq,
                              double rho);
SiSchemeResult optimize_orth_sb_si(const SideInfoSpec& spec, double power,
                                   double sigma_n_sq, double rho);

struct OrthCompareRow {
    std::string scheme;
    Availability availability;
    double d_sum = 0.0;
};

/// AF and SB sum distortions over symmetric orthogonal channels for every
/// availability pattern at side gains s1 = s2 = s.
std::vector<OrthCompareRow> orth_si_compare(double s, double snr, double rho);

} // namespace jscc::si

#endif
