#include "jscc/sb.hpp"

#include <algorithm>
#include <cmath>

#include "jscc/errors.hpp"
#include "jscc/optim.hpp"

namespace jscc::sb {

namespace {

constexpr double kSlack = 1e-12;

// Symmetric N-user forward test channel W_i = U_i + Q_i, var(Q_i) = q,
// unit-variance sources with common pairwise correlation rho.  The
// exchangeable structure gives closed forms without any matrix work.

double i_source_sum(long n, double rho, double q) {
    const double nn = static_cast<double>(n);
    return 0.5 * (std::log2(1.0 + (nn - 1.0) * rho + q) +
                  (nn - 1.0) * std::log2(1.0 - rho + q) - nn * std::log2(q));
}

double i_source_individual(long n, double rho, double q) {
    if (n == 1) return 0.5 * std::log2((1.0 + q) / q);
    const double nn = static_cast<double>(n);
    const double var_given_rest =
        (1.0 + q) - rho * rho * (nn - 1.0) / (1.0 + q + (nn - 2.0) * rho);
    return 0.5 * std::log2(var_given_rest / q);
}

double d_per_user(long n, double rho, double q) {
    if (n == 1) return q / (1.0 + q);
    const double nn = static_cast<double>(n);
    // MMSE weights for W_1 (a1) and each other W_j (a2).
    const double m11 = 1.0 + q, m12 = rho * (nn - 1.0);
    const double m21 = rho, m22 = 1.0 + q + rho * (nn - 2.0);
    const double det = m11 * m22 - m12 * m21;
    const double a1 = (m22 - m12 * rho) / det;
    const double a2 = (m11 * rho - m21) / det;
    return 1.0 - a1 - rho * (nn - 1.0) * a2;
}

// Two-user asymmetric test channel, unit variances.
struct PairChannel {
    double det, i1, i2, isum, d1, d2;
};

PairChannel pair_channel(double rho, double q1, double q2) {
    PairChannel c;
    c.det = (1.0 + q1) * (1.0 + q2) - rho * rho;
    c.isum = 0.5 * std::log2(c.det / (q1 * q2));
    c.i1 = 0.5 * std::log2(c.det / (q1 * (1.0 + q2)));
    c.i2 = 0.5 * std::log2(c.det / (q2 * (1.0 + q1)));
    c.d1 = q1 * (1.0 + q2 - rho * rho) / c.det;
    c.d2 = q2 * (1.0 + q1 - rho * rho) / c.det;
    return c;
}

void check_rho(double rho, const char* what) {
    if (!(rho >= 0.0 && rho < 1.0)) throw InvalidParams(std::string(what) + ": rho must lie in [0,1)");
}

} // namespace

void RatePair::validate() const {
    if (!(r1 >= 0.0) || !(r2 >= 0.0)) throw InvalidParams("RatePair: rates must be >= 0");
}

double sb_beta(double d1, double d2, double sigma1_sq, double sigma2_sq, double rho) {
    check_rho(rho, "sb_beta");
    const double c = 1.0 - rho * rho;
    return 1.0 + std::sqrt(1.0 + 4.0 * rho * rho * d1 * d2 / (sigma1_sq * sigma2_sq * c * c));
}

bool sb_region_contains(const RatePair& r, double d1, double d2, double sigma1_sq,
                        double sigma2_sq, double rho) {
    r.validate();
    check_rho(rho, "sb_region_contains");
    if (!(sigma1_sq > 0.0) || !(sigma2_sq > 0.0))
        throw InvalidParams("sb_region_contains: source variances must be > 0");
    if (!(d1 > 0.0 && d1 <= sigma1_sq) || !(d2 > 0.0 && d2 <= sigma2_sq))
        throw InvalidParams("sb_region_contains: distortions must lie in (0, sigma^2]");

    const double c = 1.0 - rho * rho;
    const double rhs1 = 0.5 * std::log2(sigma1_sq * (c + rho * rho * std::exp2(-2.0 * r.r2)) / d1);
    const double rhs2 = 0.5 * std::log2(sigma2_sq * (c + rho * rho * std::exp2(-2.0 * r.r1)) / d2);
    const double beta = sb_beta(d1, d2, sigma1_sq, sigma2_sq, rho);
    const double rhs_sum = 0.5 * std::log2(sigma1_sq * sigma2_sq * c * beta / (2.0 * d1 * d2));
    return r.r1 + kSlack >= rhs1 && r.r2 + kSlack >= rhs2 && r.r1 + r.r2 + kSlack >= rhs_sum;
}

double sb_symmetric_distortion_from_rate(double rate_bits, double rho) {
    if (!(rate_bits >= 0.0)) throw InvalidParams("sb distortion: rate must be >= 0");
    check_rho(rho, "sb distortion");
    const double t = std::exp2(-4.0 * rate_bits);
    return std::sqrt(t * (1.0 - rho * rho) + rho * rho * t * t);
}

double sb_gmac_rate(double snr) {
    if (!(snr >= 0.0)) throw InvalidParams("sb_gmac_rate: SNR must be >= 0");
    return 0.25 * std::log2(1.0 + 2.0 * snr);
}

double sb_gmac_distortion(double snr, double rho) {
    return sb_symmetric_distortion_from_rate(sb_gmac_rate(snr), rho);
}

SbAsymmetric sb_gmac_asymmetric(double p1, double p2, double sigma_n_sq, double rho,
                                double sigma1_sq, double sigma2_sq, bool minimize_sum) {
    if (!(p1 >= 0.0) || !(p2 >= 0.0)) throw InvalidParams("sb_gmac_asymmetric: powers must be >= 0");
    if (!(sigma_n_sq > 0.0)) throw InvalidParams("sb_gmac_asymmetric: noise variance must be > 0");
    check_rho(rho, "sb_gmac_asymmetric");

    const double c1 = 0.5 * std::log2(1.0 + p1 / sigma_n_sq);
    const double c2 = 0.5 * std::log2(1.0 + p2 / sigma_n_sq);
    const double csum = 0.5 * std::log2(1.0 + (p1 + p2) / sigma_n_sq);

    SbAsymmetric out;
    if (csum < 1e-12) {
        out.d1 = sigma1_sq;
        out.d2 = sigma2_sq;
        return out;
    }

    // Quantizer noises on the sum-capacity-tight curve: fixing q1 pins q2.
    const double big_k = 1.0 + (p1 + p2) / sigma_n_sq; // 2^{2 csum}
    const double q_lo = 1.0 / (big_k - 1.0);
    auto q2_of = [&](double q1) {
        return (1.0 + q1 - rho * rho) / (big_k * q1 - (1.0 + q1));
    };

    auto objective = [&](double lq1) {
        const double q1 = std::exp(lq1);
        const double q2 = q2_of(q1);
        const PairChannel ch = pair_channel(rho, q1, q2);
        const double viol = std::max(0.0, ch.i1 - c1) + std::max(0.0, ch.i2 - c2);
        const double base = minimize_sum ? sigma1_sq * ch.d1 + sigma2_sq * ch.d2
                                         : std::max(sigma1_sq * ch.d1, sigma2_sq * ch.d2);
        return base + 1e3 * viol;
    };

    const double eps = 1e-11;
    const double lq_lo = std::log(q_lo * (1.0 + eps));
    const double q_hi_edge = q_lo * (1.0 + eps);
    const double lq_hi = std::log((1.0 + q_hi_edge - rho * rho) /
                                  (big_k * q_hi_edge - (1.0 + q_hi_edge)));
    const double lq_star = optim::golden_min(objective, lq_lo, lq_hi, 1e-13, 400);

    const double q1 = std::exp(lq_star);
    const double q2 = q2_of(q1);
    const PairChannel ch = pair_channel(rho, q1, q2);
    out.d1 = sigma1_sq * ch.d1;
    out.d2 = sigma2_sq * ch.d2;
    out.r1 = ch.i1;
    out.r2 = csum - ch.i1;
    return out;
}

double sb_multiuser(long n_users, double snr, double rho) {
    if (n_users < 1) throw InvalidParams("sb_multiuser: need at least one user");
    if (!(snr >= 0.0)) throw InvalidParams("sb_multiuser: SNR must be >= 0");
    check_rho(rho, "sb_multiuser");
    if (snr == 0.0) return 1.0;

    const double csum = 0.5 * std::log2(1.0 + static_cast<double>(n_users) * snr);
    const double cind = 0.5 * std::log2(1.0 + snr);

    auto g_sum = [&](double lq) { return i_source_sum(n_users, rho, std::exp(lq)) - csum; };
    double lq = 0.0;
    if (!optim::scan_root(g_sum, -60.0, 60.0, 400, &lq))
        throw NoConvergence("sb_multiuser: no feasible quantizer noise");
    double q = std::exp(lq);

    if (i_source_individual(n_users, rho, q) > cind + 1e-12) {
        auto g_ind = [&](double l) { return i_source_individual(n_users, rho, std::exp(l)) - cind; };
        double lq2 = 0.0;
        if (optim::scan_root(g_ind, -60.0, 60.0, 400, &lq2)) q = std::max(q, std::exp(lq2));
    }
    return d_per_user(n_users, rho, q);
}

} // namespace jscc::sb
