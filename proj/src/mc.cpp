#include "jscc/mc.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "jscc/errors.hpp"

namespace jscc::mc {

namespace {

constexpr long kBlockSize = 65536;
constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Accumulator {
    double e2[2] = {0.0, 0.0}; // sum of squared errors
    double e4[2] = {0.0, 0.0}; // sum of fourth powers
};

// Pairwise reduction in block-index order; the result does not depend on
// any evaluation order.
Accumulator pairwise_sum(const std::vector<Accumulator>& blocks, size_t lo, size_t hi) {
    if (hi - lo == 1) return blocks[lo];
    const size_t mid = lo + (hi - lo) / 2;
    const Accumulator a = pairwise_sum(blocks, lo, mid);
    const Accumulator b = pairwise_sum(blocks, mid, hi);
    Accumulator out;
    for (int i = 0; i < 2; ++i) {
        out.e2[i] = a.e2[i] + b.e2[i];
        out.e4[i] = a.e4[i] + b.e4[i];
    }
    return out;
}

SimResult finalize(const std::vector<Accumulator>& blocks, long n, uint64_t seed) {
    const Accumulator total = pairwise_sum(blocks, 0, blocks.size());
    SimResult r;
    r.n = n;
    r.seed = seed;
    const double nn = static_cast<double>(n);
    r.d1_hat = total.e2[0] / nn;
    r.d2_hat = total.e2[1] / nn;
    const double var1 = (total.e4[0] / nn - r.d1_hat * r.d1_hat) * nn / (nn - 1.0);
    const double var2 = (total.e4[1] / nn - r.d2_hat * r.d2_hat) * nn / (nn - 1.0);
    r.stderr1 = std::sqrt(std::max(0.0, var1) / nn);
    r.stderr2 = std::sqrt(std::max(0.0, var2) / nn);
    return r;
}

void check_n(long n) {
    if (n < 1000) throw InvalidParams("simulate: need at least 1000 samples");
}

// Runs the per-sample kernel over deterministic blocks.  The kernel draws
// its normals from the supplied stream and returns the two squared errors.
template <typename Kernel>
SimResult run_blocks(long n, uint64_t seed, Kernel&& kernel) {
    const long n_blocks = (n + kBlockSize - 1) / kBlockSize;
    std::vector<Accumulator> blocks(static_cast<size_t>(n_blocks));
    for (long b = 0; b < n_blocks; ++b) {
        NormalStream stream(block_stream_seed(seed, static_cast<uint64_t>(b)));
        const long count = std::min(kBlockSize, n - b * kBlockSize);
        Accumulator& acc = blocks[static_cast<size_t>(b)];
        for (long i = 0; i < count; ++i) {
            double e1, e2;
            kernel(stream, e1, e2);
            const double s1 = e1 * e1, s2 = e2 * e2;
            acc.e2[0] += s1;
            acc.e2[1] += s2;
            acc.e4[0] += s1 * s1;
            acc.e4[1] += s2 * s2;
        }
    }
    return finalize(blocks, n, seed);
}

} // namespace

uint64_t block_stream_seed(uint64_t seed, uint64_t block) {
    SplitMix64 mixer{seed ^ ((block + 1) * 0x9E3779B97F4A7C15ULL)};
    return mixer.next();
}

double NormalStream::next() {
    if (have_spare) {
        have_spare = false;
        return spare;
    }
    const double u1 = rng.next_open01();
    const double u2 = rng.next_open01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare = r * std::sin(kTwoPi * u2);
    have_spare = true;
    return r * std::cos(kTwoPi * u2);
}

SimResult simulate_af_gmac(const af::AfParams& p, long n, uint64_t seed) {
    p.validate();
    check_n(n);
    const double s1 = std::sqrt(p.sigma1_sq);
    const double s2 = std::sqrt(p.sigma2_sq);
    const double cross = p.rho, tail = std::sqrt(1.0 - p.rho * p.rho);
    const double g1 = std::sqrt(p.p1) / s1, g2 = std::sqrt(p.p2) / s2;
    const double sn = std::sqrt(p.sigma_n_sq);

    const gauss::ConditionalLaw law = gauss::condition(af::af_joint(p), {"Y"});
    const double k1 = law.coefficients("U1")(0);
    const double k2 = law.coefficients("U2")(0);

    return run_blocks(n, seed, [&](NormalStream& rng, double& e1, double& e2) {
        const double z1 = rng.next(), z2 = rng.next(), zn = rng.next();
        const double u1 = s1 * z1;
        const double u2 = s2 * (cross * z1 + tail * z2);
        const double y = g1 * u1 + g2 * u2 + sn * zn;
        e1 = u1 - k1 * y;
        e2 = u2 - k2 * y;
    });
}

SimResult simulate_af_orthogonal(const orth::OrthParams& p, long n, uint64_t seed) {
    p.validate();
    check_n(n);
    const double s1 = std::sqrt(p.sigma1_sq);
    const double s2 = std::sqrt(p.sigma2_sq);
    const double cross = p.rho, tail = std::sqrt(1.0 - p.rho * p.rho);
    const double g1 = std::sqrt(p.p1) / s1, g2 = std::sqrt(p.p2) / s2;
    const double sn1 = std::sqrt(p.sigma_n1_sq), sn2 = std::sqrt(p.sigma_n2_sq);

    const gauss::ConditionalLaw law = gauss::condition(orth_af_joint(p), {"Y1", "Y2"});
    const Eigen::VectorXd k1 = law.coefficients("U1");
    const Eigen::VectorXd k2 = law.coefficients("U2");

    return run_blocks(n, seed, [&](NormalStream& rng, double& e1, double& e2) {
        const double z1 = rng.next(), z2 = rng.next();
        const double u1 = s1 * z1;
        const double u2 = s2 * (cross * z1 + tail * z2);
        const double y1 = g1 * u1 + sn1 * rng.next();
        const double y2 = g2 * u2 + sn2 * rng.next();
        e1 = u1 - (k1(0) * y1 + k1(1) * y2);
        e2 = u2 - (k2(0) * y1 + k2(1) * y2);
    });
}

SimResult simulate_af_si(const si::SideInfoSpec& spec, const si::LinearCombo& combo,
                         double p1, double p2, double sigma_n_sq, double rho, long n,
                         uint64_t seed) {
    check_n(n);
    const gauss::JointGaussian joint = si::af_si_joint(spec, combo, p1, p2, sigma_n_sq, rho);
    gauss::Labels obs{"Y"};
    if (spec.at_decoder()) {
        obs.push_back("Z1");
        obs.push_back("Z2");
    }
    const gauss::ConditionalLaw law = gauss::condition(joint, obs);
    const Eigen::VectorXd k1 = law.coefficients("U1");
    const Eigen::VectorXd k2 = law.coefficients("U2");
    const bool dec_si = spec.at_decoder();

    const double tail = std::sqrt(1.0 - rho * rho);
    const double g1 = std::sqrt(p1), g2 = std::sqrt(p2);
    const double sn = std::sqrt(sigma_n_sq);

    return run_blocks(n, seed, [&](NormalStream& rng, double& e1, double& e2) {
        const double zu1 = rng.next(), zu2 = rng.next();
        const double u1 = zu1;
        const double u2 = rho * zu1 + tail * zu2;
        const double z1 = spec.s1 * u2 + rng.next();
        const double z2 = spec.s2 * u1 + rng.next();
        const double l1 = combo.a1 * u1 + combo.b1 * z1;
        const double l2 = combo.a2 * u2 + combo.b2 * z2;
        const double y = g1 * l1 + g2 * l2 + sn * rng.next();
        double u1_hat = k1(0) * y;
        double u2_hat = k2(0) * y;
        if (dec_si) {
            u1_hat += k1(1) * z1 + k1(2) * z2;
            u2_hat += k2(1) * z1 + k2(2) * z2;
        }
        e1 = u1 - u1_hat;
        e2 = u2 - u2_hat;
    });
}

Eigen::MatrixXd sample_joint(const gauss::JointGaussian& g, long n, uint64_t seed) {
    if (n < 1) throw InvalidParams("sample_joint: need at least one sample");
    const int d = g.dim();
    Eigen::MatrixXd factor;
    Eigen::LLT<Eigen::MatrixXd> llt(g.cov());
    if (llt.info() == Eigen::Success) {
        factor = llt.matrixL();
    } else {
        // semidefinite model: eigenvalue square root
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.cov());
        factor = es.eigenvectors() *
                 es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    }

    Eigen::MatrixXd out(n, d);
    Eigen::VectorXd z(d);
    for (long b = 0; b * kBlockSize < n; ++b) {
        NormalStream stream(block_stream_seed(seed, static_cast<uint64_t>(b)));
        const long count = std::min(kBlockSize, n - b * kBlockSize);
        for (long i = 0; i < count; ++i) {
            for (int j = 0; j < d; ++j) z(j) = stream.next();
            out.row(b * kBlockSize + i) = (factor * z).transpose();
        }
    }
    return out;
}

} // namespace jscc::mc
