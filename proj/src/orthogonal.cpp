#include "jscc/orthogonal.hpp"

#include <cmath>
#include <limits>

#include "jscc/errors.hpp"
#include "jscc/sb.hpp"

namespace jscc::orth {

void OrthParams::validate() const {
    if (!(p1 >= 0.0) || !(p2 >= 0.0)) throw InvalidParams("OrthParams: powers must be >= 0");
    if (!(sigma1_sq > 0.0) || !(sigma2_sq > 0.0))
        throw InvalidParams("OrthParams: source variances must be > 0");
    if (!(sigma_n1_sq > 0.0) || !(sigma_n2_sq > 0.0))
        throw InvalidParams("OrthParams: noise variances must be > 0");
    if (!(rho >= 0.0 && rho < 1.0)) throw InvalidParams("OrthParams: rho must lie in [0,1)");
}

DistortionPair orth_af_distortions(const OrthParams& p) {
    p.validate();
    const double c = 1.0 - p.rho * p.rho;
    const double denom = p.p1 * p.p2 * c + p.sigma_n2_sq * p.p1 + p.sigma_n1_sq * p.p2 +
                         p.sigma_n1_sq * p.sigma_n2_sq;
    DistortionPair d;
    d.d1 = p.sigma1_sq * p.sigma_n1_sq * (p.p2 * c + p.sigma_n2_sq) / denom;
    d.d2 = p.sigma2_sq * p.sigma_n2_sq * (p.p1 * c + p.sigma_n1_sq) / denom;
    return d;
}

double orth_sb_distortion(double snr, double rho) {
    if (!(snr >= 0.0)) throw InvalidParams("orth_sb_distortion: SNR must be >= 0");
    return sb::sb_symmetric_distortion_from_rate(0.5 * std::log2(1.0 + snr), rho);
}

double orth_af_symmetric(double snr, double rho) {
    if (!(snr >= 0.0)) throw InvalidParams("orth_af_symmetric: SNR must be >= 0");
    if (!(rho >= 0.0 && rho < 1.0))
        throw InvalidParams("orth_af_symmetric: rho must lie in [0,1)");
    const double c = 1.0 - rho * rho;
    return (snr * c + 1.0) / (1.0 + 2.0 * snr + snr * snr * c);
}

GapBounds orth_gap_bounds(double snr, double rho) {
    if (!(snr >= 0.0)) throw InvalidParams("orth_gap_bounds: SNR must be >= 0");
    if (!(rho >= 0.0 && rho < 1.0)) throw InvalidParams("orth_gap_bounds: rho must lie in [0,1)");
    const double s = snr;
    const double c = 1.0 - rho * rho;
    const double r2 = rho * rho;
    GapBounds g;
    g.d_lb = (s * c + 1.0) / ((1.0 + s) * (1.0 + s));
    g.d_ub = (1.0 + s) / ((1.0 + s * c) * (1.0 + s * c));
    g.gap_hi_snr = s > 0.0 ? (r2 / s) * (1.0 / (c * c) + 1.0 / c + 1.0)
                           : std::numeric_limits<double>::infinity();
    g.gap_lo_snr = s * (2.0 + s) * (1.0 + s * c) / ((1.0 + s) * (1.0 + s));
    g.gap_rho = r2 / (1.0 + s * c);
    return g;
}

gauss::JointGaussian orth_af_joint(const OrthParams& p) {
    p.validate();
    const double s1 = std::sqrt(p.sigma1_sq);
    const double s2 = std::sqrt(p.sigma2_sq);
    Eigen::MatrixXd cov(2, 2);
    cov << p.sigma1_sq, p.rho * s1 * s2, p.rho * s1 * s2, p.sigma2_sq;
    gauss::JointGaussian g({"U1", "U2"}, cov);
    g = gauss::extend(g, "Y1", {{"U1", std::sqrt(p.p1) / s1}}, p.sigma_n1_sq);
    g = gauss::extend(g, "Y2", {{"U2", std::sqrt(p.p2) / s2}}, p.sigma_n2_sq);
    return g;
}

} // namespace jscc::orth
