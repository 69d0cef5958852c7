#ifndef JSCC_RUN_HPP
#define JSCC_RUN_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "jscc/side_info.hpp"

namespace jscc::cli {

enum class Channel { gmac, orthogonal };

Channel channel_from_string(const std::string& s);

/// One configuration drives all subcommands; each validates the subset of
/// fields it uses.
struct SweepConfig {
    std::vector<std::string> schemes{"af", "sb", "lt", "nc"};
    Channel channel = Channel::gmac;
    double snr_db_start = -20.0;
    double snr_db_stop = 40.0;
    double snr_db_step = 1.0;
    std::vector<double> rho{0.5};
    std::vector<long> n_users{2, 3, 4, 5, 6, 7, 8, 9, 10};
    si::Availability availability = si::Availability::none;
    std::vector<double> si_gain{1.0};
    bool mc = false;
    long mc_samples = 1000000;
    uint64_t seed = 1;
};

/// 6 significant digits, scientific below 1e-4; byte-deterministic.
std::string format_number(double x);

/// Distortion-vs-SNR curves, one row per (snr, rho, scheme).
/// Header: snr_db,rho,scheme,D  (+ D_mc,stderr with --mc).
void cmd_sweep(const SweepConfig& cfg, std::ostream& out);

/// Optimal power allocation table for the uncoded scheme, rho = 0.5,
/// P1 = 10, P2 in {1, 5, 20, 50}.  Text table plus optional CSV.
void cmd_table1(std::ostream& text, std::ostream* csv);

/// Per-user distortion for N users: snr_db,N,scheme,D.
void cmd_multiuser(const SweepConfig& cfg, std::ostream& out);

/// Distortion vs side-information gain: s,scheme,availability,D_sum.
/// On the orthogonal channel every availability pattern is tabulated.
void cmd_sideinfo(const SweepConfig& cfg, std::ostream& out);

/// Monte Carlo vs closed forms on a rho x SNR grid for both channel
/// models; returns the number of failed 3-sigma checks.
int cmd_oracle_check(long samples, uint64_t seed, std::ostream& out);

} // namespace jscc::cli

#endif
