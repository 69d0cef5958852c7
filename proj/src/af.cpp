#include "jscc/af.hpp"

#include <cmath>

#include "jscc/errors.hpp"

namespace jscc::af {

void AfParams::validate() const {
    if (!(p1 >= 0.0) || !(p2 >= 0.0)) throw InvalidParams("AfParams: powers must be >= 0");
    if (!(sigma1_sq > 0.0) || !(sigma2_sq > 0.0))
        throw InvalidParams("AfParams: source variances must be > 0");
    if (!(sigma_n_sq > 0.0)) throw InvalidParams("AfParams: noise variance must be > 0");
    // Negative correlation would flip the coherent-combining term; reject
    // rather than silently sign-flipping an encoder.
    if (!(rho >= 0.0 && rho < 1.0)) throw InvalidParams("AfParams: rho must lie in [0,1)");
}

void MultiUserParams::validate() const {
    if (n_users < 1) throw InvalidParams("MultiUserParams: need at least one user");
    if (!(power >= 0.0)) throw InvalidParams("MultiUserParams: power must be >= 0");
    if (!(noise_var > 0.0)) throw InvalidParams("MultiUserParams: noise variance must be > 0");
    // rho >= 0 also guarantees rho > -1/(N-1), so the N-user source
    // covariance stays valid for every N.
    if (!(rho >= 0.0 && rho < 1.0)) throw InvalidParams("MultiUserParams: rho must lie in [0,1)");
}

DistortionPair af_distortions(const AfParams& p) {
    p.validate();
    const double denom = p.p1 + p.p2 + 2.0 * p.rho * std::sqrt(p.p1 * p.p2) + p.sigma_n_sq;
    const double one_minus_rho2 = 1.0 - p.rho * p.rho;
    DistortionPair d;
    d.d1 = p.sigma1_sq * (p.p2 * one_minus_rho2 + p.sigma_n_sq) / denom;
    d.d2 = p.sigma2_sq * (p.p1 * one_minus_rho2 + p.sigma_n_sq) / denom;
    return d;
}

double af_symmetric(double snr, double rho, double sigma_sq) {
    if (!(snr >= 0.0)) throw InvalidParams("af_symmetric: SNR must be >= 0");
    if (!(rho >= 0.0 && rho < 1.0)) throw InvalidParams("af_symmetric: rho must lie in [0,1)");
    if (!(sigma_sq > 0.0)) throw InvalidParams("af_symmetric: sigma^2 must be > 0");
    return sigma_sq * (snr * (1.0 - rho * rho) + 1.0) / (2.0 * snr * (1.0 + rho) + 1.0);
}

double af_multiuser(const MultiUserParams& p) {
    p.validate();
    const double n = static_cast<double>(p.n_users);
    const double beam = 1.0 + (n - 1.0) * p.rho;
    return 1.0 - p.power * beam * beam / (n * p.power * beam + p.noise_var);
}

gauss::JointGaussian af_joint(const AfParams& p) {
    p.validate();
    const double s1 = std::sqrt(p.sigma1_sq);
    const double s2 = std::sqrt(p.sigma2_sq);
    Eigen::MatrixXd cov(2, 2);
    cov << p.sigma1_sq, p.rho * s1 * s2, p.rho * s1 * s2, p.sigma2_sq;
    gauss::JointGaussian sources({"U1", "U2"}, cov);
    return gauss::extend(sources, "Y",
                         {{"U1", std::sqrt(p.p1) / s1}, {"U2", std::sqrt(p.p2) / s2}},
                         p.sigma_n_sq);
}

} // namespace jscc::af
