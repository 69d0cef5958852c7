#include "jscc/lt.hpp"

#include <algorithm>
#include <cmath>

#include "jscc/errors.hpp"
#include "jscc/optim.hpp"

namespace jscc::lt {

namespace {

void check_rho(double rho, const char* what) {
    if (!(rho >= 0.0 && rho < 1.0)) throw InvalidParams(std::string(what) + ": rho must lie in [0,1)");
}

void check_rates(double r1, double r2, const char* what) {
    if (!(r1 >= 0.0) || !(r2 >= 0.0)) throw InvalidParams(std::string(what) + ": rates must be >= 0");
}

} // namespace

double lt_rho_tilde(double r1, double r2, double rho) {
    check_rates(r1, r2, "lt_rho_tilde");
    check_rho(rho, "lt_rho_tilde");
    return rho * std::sqrt((1.0 - std::exp2(-2.0 * r1)) * (1.0 - std::exp2(-2.0 * r2)));
}

RateBounds lt_rate_bounds(double p1, double p2, double rho_tilde, double sigma_n_sq) {
    if (!(p1 >= 0.0) || !(p2 >= 0.0)) throw InvalidParams("lt_rate_bounds: powers must be >= 0");
    if (!(sigma_n_sq > 0.0)) throw InvalidParams("lt_rate_bounds: noise variance must be > 0");
    if (!(rho_tilde >= 0.0 && rho_tilde < 1.0))
        throw InvalidParams("lt_rate_bounds: rho_tilde must lie in [0,1)");
    const double gain = 1.0 / (1.0 - rho_tilde * rho_tilde);
    RateBounds b;
    b.r1_max = 0.5 * std::log2(p1 / sigma_n_sq + gain);
    b.r2_max = 0.5 * std::log2(p2 / sigma_n_sq + gain);
    const double received = sigma_n_sq + p1 + p2 + 2.0 * rho_tilde * std::sqrt(p1 * p2);
    b.sum_max = 0.5 * std::log2(received / sigma_n_sq * gain);
    return b;
}

DistortionPair lt_distortions(double r1, double r2, double rho, double sigma1_sq,
                              double sigma2_sq) {
    check_rates(r1, r2, "lt_distortions");
    check_rho(rho, "lt_distortions");
    if (!(sigma1_sq > 0.0) || !(sigma2_sq > 0.0))
        throw InvalidParams("lt_distortions: source variances must be > 0");
    const double t1 = std::exp2(-2.0 * r1);
    const double t2 = std::exp2(-2.0 * r2);
    const double rt = lt_rho_tilde(r1, r2, rho);
    const double denom = 1.0 - rt * rt;
    DistortionPair d;
    d.d1 = sigma1_sq * t1 * (1.0 - rho * rho * (1.0 - t2)) / denom;
    d.d2 = sigma2_sq * t2 * (1.0 - rho * rho * (1.0 - t1)) / denom;
    return d;
}

gauss::JointGaussian lt_covariance(double r1, double r2, double rho, double sigma1_sq,
                                   double sigma2_sq) {
    check_rates(r1, r2, "lt_covariance");
    check_rho(rho, "lt_covariance");
    const double l1 = 1.0 - std::exp2(-2.0 * r1);
    const double l2 = 1.0 - std::exp2(-2.0 * r2);
    const double s1 = std::sqrt(sigma1_sq);
    const double s2 = std::sqrt(sigma2_sq);
    const double c12 = rho * s1 * s2;

    Eigen::MatrixXd cov(4, 4);
    // Order (U1, U2, W1, W2).  E[W1 W2] = rho s1 s2 l1 l2, which gives
    // corr(W1, W2) = lt_rho_tilde(r1, r2, rho).
    cov << sigma1_sq, c12, sigma1_sq * l1, c12 * l2,
        c12, sigma2_sq, c12 * l1, sigma2_sq * l2,
        sigma1_sq * l1, c12 * l1, sigma1_sq * l1, c12 * l1 * l2,
        c12 * l2, sigma2_sq * l2, c12 * l1 * l2, sigma2_sq * l2;
    return gauss::JointGaussian({"U1", "U2", "W1", "W2"}, std::move(cov));
}

LtSymmetricSolution lt_optimize_symmetric(double snr, double rho) {
    if (!(snr >= 0.0)) throw InvalidParams("lt_optimize_symmetric: SNR must be >= 0");
    check_rho(rho, "lt_optimize_symmetric");

    constexpr double kTol = 1e-10;
    constexpr int kBudget = 200;

    // Common rate available at channel-input correlation x; sum-rate
    // equality, clipped by the per-user constraint (the sum branch is the
    // binding one for every rho < 1, but the clip keeps this honest).
    auto rate_at = [&](double x) {
        const double sum_based = 0.25 * std::log2((1.0 + 2.0 * snr * (1.0 + x)) / (1.0 - x * x));
        const double ind_based = 0.5 * std::log2(snr + 1.0 / (1.0 - x * x));
        return std::min(sum_based, ind_based);
    };
    auto residual_at = [&](double x) {
        return rho * (1.0 - std::exp2(-2.0 * rate_at(x))) - x;
    };

    LtSymmetricSolution sol;
    double x = 0.0;
    double res = residual_at(x);
    int it = 0;
    for (; it < kBudget && std::fabs(res) > 1e-14; ++it) {
        x = std::clamp(x + 0.5 * res, 0.0, rho); // damping factor 0.5
        res = residual_at(x);
    }
    if (std::fabs(res) > kTol && rho > 0.0) {
        // residual is continuous and changes sign on [0, rho]
        x = optim::bisect_root(residual_at, 0.0, rho, 200);
        res = residual_at(x);
    }
    if (std::fabs(res) > kTol)
        throw NoConvergence("lt_optimize_symmetric: fixed point did not converge");

    sol.iterations = it;
    sol.rho_tilde = x;
    sol.residual = res;
    sol.rate = rate_at(x);
    sol.distortion = lt_distortions(sol.rate, sol.rate, rho, 1.0, 1.0).d1;
    const RateBounds rb = lt_rate_bounds(snr, snr, x, 1.0);
    sol.individual_ok = sol.rate <= rb.r1_max + 1e-9 && sol.rate <= rb.r2_max + 1e-9;
    return sol;
}

double lt_multiuser(long n_users, double snr, double rho) {
    if (n_users < 1) throw InvalidParams("lt_multiuser: need at least one user");
    if (!(snr >= 0.0)) throw InvalidParams("lt_multiuser: SNR must be >= 0");
    check_rho(rho, "lt_multiuser");
    if (snr == 0.0) return 1.0;

    const double nn = static_cast<double>(n_users);

    // Forward test channel W_i = U_i + Q_i, var Q_i = q; channel inputs
    // are scaled W_i, so their correlation is rho/(1+q).
    auto i_source = [&](double q) {
        return 0.5 * (std::log2(1.0 + (nn - 1.0) * rho + q) +
                      (nn - 1.0) * std::log2(1.0 - rho + q) - nn * std::log2(q));
    };
    auto cap_sum = [&](double q) {
        const double rho_w = rho / (1.0 + q);
        return 0.5 * std::log2(1.0 + nn * snr * (1.0 + (nn - 1.0) * rho_w));
    };
    auto g = [&](double lq) {
        const double q = std::exp(lq);
        return i_source(q) - cap_sum(q);
    };

    auto var_given_rest = [&](double q) {
        if (n_users == 1) return 1.0 + q;
        return (1.0 + q) - rho * rho * (nn - 1.0) / (1.0 + q + (nn - 2.0) * rho);
    };
    auto g_ind = [&](double lq) {
        const double q = std::exp(lq);
        const double v = var_given_rest(q);
        return 0.5 * std::log2(v / q) -
               0.5 * std::log2(1.0 + snr * v / (1.0 + q));
    };

    double lq = 0.0;
    if (!optim::scan_root(g, -60.0, 60.0, 400, &lq))
        throw NoConvergence("lt_multiuser: no feasible quantizer noise");
    if (g_ind(lq) > 1e-12) {
        double lq2 = 0.0;
        if (optim::scan_root(g_ind, -60.0, 60.0, 400, &lq2)) lq = std::max(lq, lq2);
    }
    const double q = std::exp(lq);

    if (n_users == 1) return q / (1.0 + q);
    const double m11 = 1.0 + q, m12 = rho * (nn - 1.0);
    const double m21 = rho, m22 = 1.0 + q + rho * (nn - 2.0);
    const double det = m11 * m22 - m12 * m21;
    const double a1 = (m22 - m12 * rho) / det;
    const double a2 = (m11 * rho - m21) / det;
    return 1.0 - a1 - rho * (nn - 1.0) * a2;
}

} // namespace jscc::lt
