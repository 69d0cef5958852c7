#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jscc/errors.hpp"
#include "jscc/run.hpp"

namespace {

struct Args {
    jscc::cli::SweepConfig cfg;
    std::string channel = "gmac";
    std::string si = "none";
    std::string snr_spec;
    std::string out_path;
    std::string config_path;
    // one entry per subcommand that registers the flag; only the parsed
    // subcommand can have a nonzero count
    std::map<std::string, std::vector<CLI::Option*>> opts;
};

// start:stop:step, with stop and step optional
void parse_snr(const std::string& s, jscc::cli::SweepConfig& cfg) {
    if (s.empty()) return;
    double v[3] = {cfg.snr_db_start, cfg.snr_db_stop, cfg.snr_db_step};
    size_t pos = 0;
    int k = 0;
    while (k < 3) {
        const size_t colon = s.find(':', pos);
        const std::string tok =
            s.substr(pos, colon == std::string::npos ? colon : colon - pos);
        try {
            v[k] = std::stod(tok);
        } catch (const std::exception&) {
            throw jscc::ConfigError("bad --snr-db field: " + tok);
        }
        ++k;
        if (colon == std::string::npos) break;
        pos = colon + 1;
    }
    cfg.snr_db_start = v[0];
    cfg.snr_db_stop = k >= 2 ? v[1] : v[0];
    cfg.snr_db_step = k >= 3 ? v[2] : 1.0;
}

template <typename T>
std::vector<T> parse_list(const std::string& value, const std::string& key) {
    std::vector<T> out;
    std::istringstream in(value);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            if constexpr (std::is_same_v<T, double>) out.push_back(std::stod(tok));
            else out.push_back(static_cast<T>(std::stol(tok)));
        } catch (const std::exception&) {
            throw jscc::ConfigError("bad value for " + key + ": " + tok);
        }
    }
    return out;
}

std::vector<std::string> split(const std::string& value) {
    std::vector<std::string> out;
    std::istringstream in(value);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(tok);
    return out;
}

// plain key=value file; keys mirror the long flags; flags given on the
// command line take precedence
void apply_config_file(Args& a) {
    if (a.config_path.empty()) return;
    std::ifstream file(a.config_path);
    if (!file) throw jscc::ConfigError("cannot open config file: " + a.config_path);
    auto unset = [&](const char* name) {
        auto it = a.opts.find(name);
        if (it == a.opts.end()) return true;
        for (const CLI::Option* opt : it->second)
            if (opt->count() > 0) return false;
        return true;
    };
    std::string line;
    int lineno = 0;
    while (std::getline(file, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.pop_back();
        size_t start = line.find_first_not_of(' ');
        if (start == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw jscc::ConfigError("config line " + std::to_string(lineno) +
                                    ": expected key=value");
        const std::string key = line.substr(start, eq - start);
        const std::string value = line.substr(eq + 1);
        if (key == "channel") {
            if (unset("channel")) a.channel = value;
        } else if (key == "schemes") {
            if (unset("schemes")) a.cfg.schemes = split(value);
        } else if (key == "rho") {
            if (unset("rho")) a.cfg.rho = parse_list<double>(value, key);
        } else if (key == "snr-db") {
            if (unset("snr-db")) a.snr_spec = value;
        } else if (key == "n-users") {
            if (unset("n-users")) a.cfg.n_users = parse_list<long>(value, key);
        } else if (key == "si") {
            if (unset("si")) a.si = value;
        } else if (key == "si-gain") {
            if (unset("si-gain")) a.cfg.si_gain = parse_list<double>(value, key);
        } else if (key == "mc") {
            if (unset("mc")) a.cfg.mc = value == "1" || value == "true";
        } else if (key == "samples") {
            if (unset("samples")) a.cfg.mc_samples = std::stol(value);
        } else if (key == "seed") {
            if (unset("seed")) a.cfg.seed = std::stoull(value);
        } else if (key == "out") {
            if (unset("out")) a.out_path = value;
        } else {
            throw jscc::ConfigError("config line " + std::to_string(lineno) +
                                    ": unknown key " + key);
        }
    }
}

void add_common(CLI::App* cmd, Args& a) {
    a.opts["channel"].push_back(cmd->add_option("--channel", a.channel, "gmac or orthogonal")
                                    ->check(CLI::IsMember({"gmac", "orthogonal"})));
    a.opts["schemes"].push_back(
        cmd->add_option("--schemes", a.cfg.schemes, "subset of af,sb,lt,nc")->delimiter(','));
    a.opts["rho"].push_back(
        cmd->add_option("--rho", a.cfg.rho, "source correlation values")->delimiter(','));
    a.opts["snr-db"].push_back(
        cmd->add_option("--snr-db", a.snr_spec, "SNR grid start:stop:step in dB"));
    a.opts["n-users"].push_back(
        cmd->add_option("--n-users", a.cfg.n_users, "user counts")->delimiter(','));
    a.opts["si"].push_back(cmd->add_option("--si", a.si, "side information: none|enc|dec|both")
                               ->check(CLI::IsMember({"none", "enc", "dec", "both"})));
    a.opts["si-gain"].push_back(
        cmd->add_option("--si-gain", a.cfg.si_gain, "side channel gains")->delimiter(','));
    a.opts["mc"].push_back(cmd->add_flag("--mc", a.cfg.mc, "add Monte Carlo columns to AF rows"));
    a.opts["samples"].push_back(
        cmd->add_option("--samples", a.cfg.mc_samples, "Monte Carlo sample count"));
    a.opts["seed"].push_back(cmd->add_option("--seed", a.cfg.seed, "Monte Carlo seed"));
    a.opts["out"].push_back(
        cmd->add_option("--out", a.out_path, "output CSV path (default stdout)"));
    cmd->add_option("--config", a.config_path, "plain key=value configuration file");
}

void finish(Args& a, bool coded_schemes_only) {
    apply_config_file(a);
    a.cfg.channel = jscc::cli::channel_from_string(a.channel);
    a.cfg.availability = jscc::si::availability_from_string(a.si);
    parse_snr(a.snr_spec, a.cfg);

    // when --schemes is not given, default to every scheme the command
    // (and channel) supports
    bool schemes_given = false;
    for (const CLI::Option* opt : a.opts["schemes"])
        if (opt->count() > 0) schemes_given = true;
    if (!schemes_given && a.cfg.schemes == std::vector<std::string>{"af", "sb", "lt", "nc"}) {
        if (a.cfg.channel == jscc::cli::Channel::orthogonal)
            a.cfg.schemes = {"af", "sb"};
        else if (coded_schemes_only)
            a.cfg.schemes = {"af", "sb", "lt"};
    }
}

std::unique_ptr<std::ofstream> open_out(const std::string& path) {
    if (path.empty()) return nullptr;
    auto f = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*f) throw jscc::IoError("cannot open output file: " + path);
    return f;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distortion analysis of joint source-channel coding schemes for "
                 "correlated Gaussian sources on Gaussian multiple-access and "
                 "orthogonal channels"};
    app.require_subcommand(1);

    Args a;
    CLI::App* sweep = app.add_subcommand("sweep", "distortion vs SNR curves (CSV)");
    add_common(sweep, a);
    CLI::App* table1 = app.add_subcommand("table1", "optimal AF power allocation table");
    table1->add_option("--out", a.out_path, "CSV path for the table");
    CLI::App* multiuser = app.add_subcommand("multiuser", "per-user distortion for N users");
    add_common(multiuser, a);
    CLI::App* sideinfo =
        app.add_subcommand("sideinfo", "distortion vs side-information gain (CSV)");
    add_common(sideinfo, a);
    CLI::App* oracle =
        app.add_subcommand("oracle-check", "Monte Carlo validation of the closed forms");
    oracle->add_option("--samples", a.cfg.mc_samples, "samples per check");
    oracle->add_option("--seed", a.cfg.seed, "RNG seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!table1->parsed() && !oracle->parsed())
            finish(a, multiuser->parsed() || sideinfo->parsed());
        auto file = open_out(a.out_path);
        std::ostream& out = file ? *file : std::cout;
        if (sweep->parsed()) {
            jscc::cli::cmd_sweep(a.cfg, out);
        } else if (table1->parsed()) {
            jscc::cli::cmd_table1(std::cout, file ? file.get() : nullptr);
        } else if (multiuser->parsed()) {
            jscc::cli::cmd_multiuser(a.cfg, out);
        } else if (sideinfo->parsed()) {
            jscc::cli::cmd_sideinfo(a.cfg, out);
        } else if (oracle->parsed()) {
            return jscc::cli::cmd_oracle_check(a.cfg.mc_samples, a.cfg.seed, out) == 0 ? 0 : 1;
        }
    } catch (const jscc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
