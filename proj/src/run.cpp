#include "jscc/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

#include "jscc/af.hpp"
#include "jscc/bounds.hpp"
#include "jscc/errors.hpp"
#include "jscc/lt.hpp"
#include "jscc/mc.hpp"
#include "jscc/orthogonal.hpp"
#include "jscc/power_opt.hpp"
#include "jscc/sb.hpp"

namespace jscc::cli {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::vector<double> snr_grid(const SweepConfig& cfg) {
    if (!(cfg.snr_db_step > 0.0)) throw ConfigError("snr step must be > 0");
    if (cfg.snr_db_stop < cfg.snr_db_start) throw ConfigError("empty snr range");
    const long count =
        static_cast<long>(std::floor((cfg.snr_db_stop - cfg.snr_db_start) / cfg.snr_db_step +
                                     1e-9)) +
        1;
    std::vector<double> grid(static_cast<size_t>(count));
    for (long i = 0; i < count; ++i) grid[static_cast<size_t>(i)] = cfg.snr_db_start + i * cfg.snr_db_step;
    return grid;
}

std::vector<std::string> canonical_schemes(const std::vector<std::string>& schemes,
                                           const std::set<std::string>& allowed) {
    if (schemes.empty()) throw ConfigError("scheme set must not be empty");
    std::set<std::string> seen;
    for (const auto& s : schemes) {
        if (!allowed.count(s)) throw ConfigError("unknown or unsupported scheme: " + s);
        seen.insert(s);
    }
    std::vector<std::string> out;
    for (const char* s : {"af", "sb", "lt", "nc"})
        if (seen.count(s)) out.emplace_back(s);
    return out;
}

void check_rho_list(const std::vector<double>& rho) {
    if (rho.empty()) throw ConfigError("rho list must not be empty");
    for (double r : rho)
        if (!(r >= 0.0 && r < 1.0)) throw ConfigError("rho values must lie in [0,1)");
}

struct SchemeValue {
    double d = 0.0;           // per-user distortion
    bool has_mc = false;
    double d_mc = 0.0, mc_stderr = 0.0;
};

SchemeValue eval_point(const SweepConfig& cfg, const std::string& scheme, double snr,
                       double rho) {
    SchemeValue v;
    const bool with_si = cfg.availability != si::Availability::none;
    const double gain = cfg.si_gain.empty() ? 0.0 : cfg.si_gain.front();
    const si::SideInfoSpec spec{gain, gain, cfg.availability};

    if (cfg.channel == Channel::gmac) {
        if (!with_si) {
            if (scheme == "af") v.d = af::af_symmetric(snr, rho);
            else if (scheme == "sb") v.d = sb::sb_gmac_distortion(snr, rho);
            else if (scheme == "lt") v.d = lt::lt_optimize_symmetric(snr, rho).distortion;
            else v.d = nc::nc_distortion(snr, rho);
        } else {
            if (scheme == "af") {
                const si::AfSiOptimum opt = si::optimize_af_si(spec, snr, snr, 1.0, rho);
                v.d = 0.5 * opt.d_sum;
                if (cfg.mc) {
                    const mc::SimResult r = mc::simulate_af_si(spec, opt.combo, snr, snr, 1.0,
                                                               rho, cfg.mc_samples, cfg.seed);
                    v.has_mc = true;
                    v.d_mc = 0.5 * (r.d1_hat + r.d2_hat);
                    v.mc_stderr = 0.5 * (r.stderr1 + r.stderr2);
                }
                return v;
            }
            if (scheme == "sb") v.d = 0.5 * si::optimize_sb_si(spec, snr, 1.0, rho).d_sum;
            else v.d = 0.5 * si::optimize_lt_si(spec, snr, 1.0, rho).d_sum;
        }
    } else {
        if (!with_si) {
            if (scheme == "af") v.d = orth::orth_af_symmetric(snr, rho);
            else v.d = orth::orth_sb_distortion(snr, rho);
        } else {
            if (scheme == "af")
                v.d = 0.5 * si::optimize_orth_af_si(spec, snr, snr, 1.0, 1.0, rho).d_sum;
            else v.d = 0.5 * si::optimize_orth_sb_si(spec, snr, 1.0, rho).d_sum;
        }
    }

    if (cfg.mc && scheme == "af" && !with_si) {
        mc::SimResult r;
        if (cfg.channel == Channel::gmac) {
            r = mc::simulate_af_gmac({snr, snr, 1.0, 1.0, rho, 1.0}, cfg.mc_samples, cfg.seed);
        } else {
            orth::OrthParams p;
            p.p1 = p.p2 = snr;
            p.rho = rho;
            r = mc::simulate_af_orthogonal(p, cfg.mc_samples, cfg.seed);
        }
        v.has_mc = true;
        v.d_mc = 0.5 * (r.d1_hat + r.d2_hat);
        v.mc_stderr = 0.5 * (r.stderr1 + r.stderr2);
    }
    return v;
}

} // namespace

Channel channel_from_string(const std::string& s) {
    if (s == "gmac") return Channel::gmac;
    if (s == "orthogonal") return Channel::orthogonal;
    throw ConfigError("unknown channel: " + s);
}

std::string format_number(double x) {
    if (x == 0.0) return "0";
    char buf[48];
    if (std::fabs(x) < 1e-4) {
        std::snprintf(buf, sizeof buf, "%.5e", x);
    } else {
        std::snprintf(buf, sizeof buf, "%.6g", x);
    }
    return buf;
}

void cmd_sweep(const SweepConfig& cfg, std::ostream& out) {
    const std::set<std::string> allowed =
        cfg.channel == Channel::gmac ? std::set<std::string>{"af", "sb", "lt", "nc"}
                                     : std::set<std::string>{"af", "sb"};
    const auto schemes = canonical_schemes(cfg.schemes, allowed);
    check_rho_list(cfg.rho);
    const auto grid = snr_grid(cfg);
    const bool with_si = cfg.availability != si::Availability::none;
    if (with_si) {
        if (cfg.si_gain.size() != 1)
            throw ConfigError("side-information sweep uses a single --si-gain value");
        if (!(cfg.si_gain.front() >= 0.0)) throw ConfigError("side gain must be >= 0");
        for (const auto& s : schemes)
            if (s == "nc") throw ConfigError("no converse bound with side information");
        if (cfg.mc && cfg.channel == Channel::orthogonal)
            throw ConfigError("--mc with side information is only simulated on the gmac channel");
    }

    out << "snr_db,rho,scheme,D";
    if (cfg.mc) out << ",D_mc,stderr";
    out << "\n";
    for (double snr_db : grid) {
        const double snr = db_to_linear(snr_db);
        for (double rho : cfg.rho) {
            for (const auto& scheme : schemes) {
                const SchemeValue v = eval_point(cfg, scheme, snr, rho);
                out << format_number(snr_db) << ',' << format_number(rho) << ',' << scheme
                    << ',' << format_number(v.d);
                if (cfg.mc) {
                    if (v.has_mc)
                        out << ',' << format_number(v.d_mc) << ',' << format_number(v.mc_stderr);
                    else
                        out << ",,";
                }
                out << "\n";
            }
        }
    }
}

void cmd_table1(std::ostream& text, std::ostream* csv) {
    text << "Optimal power allocation, rho = 0.5, unit variances\n";
    text << "    P1      P2      a*      b*   D_min\n";
    if (csv) *csv << "P1,P2,a_star,b_star,D_min\n";
    const double p1 = 10.0;
    for (double p2 : {1.0, 5.0, 20.0, 50.0}) {
        const popt::PowerSolution s = popt::optimize_af_powers(p1, p2, 0.5);
        char line[128];
        std::snprintf(line, sizeof line, "%6g  %6g  %6.4g  %6.4g  %6.4f\n", p1, p2, s.a_star,
                      s.b_star, s.d_min);
        text << line;
        if (csv)
            *csv << format_number(p1) << ',' << format_number(p2) << ','
                 << format_number(s.a_star) << ',' << format_number(s.b_star) << ','
                 << format_number(s.d_min) << "\n";
    }
}

void cmd_multiuser(const SweepConfig& cfg, std::ostream& out) {
    const auto schemes = canonical_schemes(cfg.schemes, {"af", "sb", "lt"});
    check_rho_list(cfg.rho);
    if (cfg.rho.size() != 1) throw ConfigError("multiuser table uses a single rho");
    if (cfg.n_users.empty()) throw ConfigError("user count list must not be empty");
    for (long n : cfg.n_users)
        if (n < 1) throw ConfigError("user counts must be >= 1");
    const double rho = cfg.rho.front();
    const auto grid = snr_grid(cfg);

    out << "snr_db,N,scheme,D\n";
    for (double snr_db : grid) {
        const double snr = db_to_linear(snr_db);
        for (long n : cfg.n_users) {
            for (const auto& scheme : schemes) {
                double d;
                if (scheme == "af") {
                    d = af::af_multiuser({n, snr, rho, 1.0});
                } else if (scheme == "sb") {
                    d = sb::sb_multiuser(n, snr, rho);
                } else {
                    d = lt::lt_multiuser(n, snr, rho);
                }
                out << format_number(snr_db) << ',' << n << ',' << scheme << ','
                    << format_number(d) << "\n";
            }
        }
    }
}

void cmd_sideinfo(const SweepConfig& cfg, std::ostream& out) {
    check_rho_list(cfg.rho);
    if (cfg.rho.size() != 1) throw ConfigError("side-information table uses a single rho");
    if (cfg.si_gain.empty()) throw ConfigError("side gain list must not be empty");
    for (double s : cfg.si_gain)
        if (!(s >= 0.0)) throw ConfigError("side gains must be >= 0");
    const double rho = cfg.rho.front();
    const double snr = db_to_linear(cfg.snr_db_start);

    out << "s,scheme,availability,D_sum\n";
    if (cfg.channel == Channel::orthogonal) {
        for (double s : cfg.si_gain) {
            auto rows = si::orth_si_compare(s, snr, rho);
            std::stable_sort(rows.begin(), rows.end(),
                             [](const si::OrthCompareRow& a, const si::OrthCompareRow& b) {
                                 return a.scheme < b.scheme;
                             });
            for (const auto& row : rows)
                out << format_number(s) << ',' << row.scheme << ','
                    << si::to_string(row.availability) << ',' << format_number(row.d_sum)
                    << "\n";
        }
        return;
    }

    const auto schemes = canonical_schemes(cfg.schemes, {"af", "sb", "lt"});
    for (double s : cfg.si_gain) {
        const si::SideInfoSpec spec{s, s, cfg.availability};
        for (const auto& scheme : schemes) {
            double d_sum;
            if (scheme == "af") d_sum = si::optimize_af_si(spec, snr, snr, 1.0, rho).d_sum;
            else if (scheme == "sb") d_sum = si::optimize_sb_si(spec, snr, 1.0, rho).d_sum;
            else d_sum = si::optimize_lt_si(spec, snr, 1.0, rho).d_sum;
            out << format_number(s) << ',' << scheme << ',' << si::to_string(cfg.availability)
                << ',' << format_number(d_sum) << "\n";
        }
    }
}

int cmd_oracle_check(long samples, uint64_t seed, std::ostream& out) {
    int failures = 0;
    const std::vector<double> rhos{0.0, 0.5, 0.9};
    const std::vector<double> snr_dbs{-10.0, 0.0, 10.0, 30.0};
    auto report = [&](const char* chan, double rho, double snr_db, double z1, double z2) {
        const bool ok = std::fabs(z1) <= 3.0 && std::fabs(z2) <= 3.0;
        if (!ok) ++failures;
        char line[160];
        std::snprintf(line, sizeof line, "%-10s rho=%.1f snr=%+5.0fdB  z1=%+6.2f z2=%+6.2f  %s\n",
                      chan, rho, snr_db, z1, z2, ok ? "OK" : "FAIL");
        out << line;
    };

    for (double rho : rhos) {
        for (double snr_db : snr_dbs) {
            const double snr = db_to_linear(snr_db);
            {
                const af::AfParams p{snr, snr, 1.0, 1.0, rho, 1.0};
                const DistortionPair d = af::af_distortions(p);
                const mc::SimResult r = mc::simulate_af_gmac(p, samples, seed);
                report("gmac", rho, snr_db, (r.d1_hat - d.d1) / r.stderr1,
                       (r.d2_hat - d.d2) / r.stderr2);
            }
            {
                orth::OrthParams p;
                p.p1 = p.p2 = snr;
                p.rho = rho;
                const DistortionPair d = orth::orth_af_distortions(p);
                const mc::SimResult r = mc::simulate_af_orthogonal(p, samples, seed);
                report("orthogonal", rho, snr_db, (r.d1_hat - d.d1) / r.stderr1,
                       (r.d2_hat - d.d2) / r.stderr2);
            }
        }
    }
    out << (failures == 0 ? "all oracle checks passed\n" : "oracle checks FAILED\n");
    return failures;
}

} // namespace jscc::cli
