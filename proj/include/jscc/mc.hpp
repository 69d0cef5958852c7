#ifndef JSCC_MC_HPP
#define JSCC_MC_HPP

#include <cstdint>

#include <Eigen/Dense>

#include "jscc/af.hpp"
#include "jscc/gauss.hpp"
#include "jscc/orthogonal.hpp"
#include "jscc/side_info.hpp"

namespace jscc::mc {

/**
 * RNG recipe, fixed so results reproduce bit for bit across platforms:
 * SplitMix64 (Steele/Lea/Vigna) streams, one per 65536-sample block, the
 * block stream seeded with mix(seed ^ (block+1) * 0x9E3779B97F4A7C15);
 * uniforms are (x >> 11 + 1) * 2^-53 in (0,1]; normals by Box-Muller.
 */
struct SplitMix64 {
    uint64_t state = 0;

    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double next_open01() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }
};

uint64_t block_stream_seed(uint64_t seed, uint64_t block);

/// Standard normal stream (Box-Muller over SplitMix64 uniforms).
struct NormalStream {
    SplitMix64 rng;
    bool have_spare = false;
    double spare = 0.0;

    explicit NormalStream(uint64_t state) : rng{state} {}
    double next();
};

/// Empirical mean-square errors with their standard errors.
struct SimResult {
    double d1_hat = 0.0;
    double d2_hat = 0.0;
    double stderr1 = 0.0;
    double stderr2 = 0.0;
    long n = 0;
    uint64_t seed = 0;
};

/// Sample-level uncoded GMAC pipeline with the exact linear MMSE decoder.
SimResult simulate_af_gmac(const af::AfParams& p, long n, uint64_t seed);

/// Same over orthogonal channels, decoder conditions on (Y1, Y2).
SimResult simulate_af_orthogonal(const orth::OrthParams& p, long n, uint64_t seed);

/// Uncoded pipeline with side information; the decoder conditions on
/// (Y, Z1, Z2) or on Y alone depending on availability.
SimResult simulate_af_si(const si::SideInfoSpec& spec, const si::LinearCombo& combo,
                         double p1, double p2, double sigma_n_sq, double rho, long n,
                         uint64_t seed);

/// n draws (one per row) of a joint Gaussian via its Cholesky factor
/// (eigenvalue square root for semidefinite models).  Test oracle helper.
Eigen::MatrixXd sample_joint(const gauss::JointGaussian& g, long n, uint64_t seed);

} // namespace jscc::mc

#endif
