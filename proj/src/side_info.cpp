#include "jscc/side_info.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "jscc/errors.hpp"
#include "jscc/optim.hpp"

namespace jscc::si {

namespace {

constexpr double kComboTol = 1e-9;

void check_rho(double rho, const char* what) {
    if (!(rho >= 0.0 && rho < 1.0)) throw InvalidParams(std::string(what) + ": rho must lie in [0,1)");
}

double combo_variance(double a, double b, double s, double rho) {
    // var(a U_i + b Z_i) with Z_i = s U_j + V_i, unit source variances
    return a * a + 2.0 * a * b * s * rho + b * b * (s * s + 1.0);
}

void check_combo(const SideInfoSpec& spec, const LinearCombo& c, double rho,
                 const char* what) {
    if (!spec.at_encoders() && (c.b1 != 0.0 || c.b2 != 0.0))
        throw InvalidParams(std::string(what) +
                            ": encoders have no side information, b coefficients must be 0");
    const double v1 = combo_variance(c.a1, c.b1, spec.s1, rho);
    const double v2 = combo_variance(c.a2, c.b2, spec.s2, rho);
    if (std::fabs(v1 - 1.0) > kComboTol || std::fabs(v2 - 1.0) > kComboTol)
        throw InvalidParams(std::string(what) + ": combo is not normalized to unit variance");
}

gauss::JointGaussian base_joint(const SideInfoSpec& spec, double rho) {
    Eigen::MatrixXd cov(2, 2);
    cov << 1.0, rho, rho, 1.0;
    gauss::JointGaussian g({"U1", "U2"}, cov);
    g = gauss::extend(g, "Z1", {{"U2", spec.s1}}, 1.0);
    g = gauss::extend(g, "Z2", {{"U1", spec.s2}}, 1.0);
    return g;
}

gauss::Labels with_decoder_si(const SideInfoSpec& spec, gauss::Labels base) {
    if (spec.at_decoder()) {
        base.push_back("Z1");
        base.push_back("Z2");
    }
    return base;
}

} // namespace

std::string to_string(Availability a) {
    switch (a) {
        case Availability::none: return "none";
        case Availability::encoders_only: return "enc";
        case Availability::decoder_only: return "dec";
        case Availability::both: return "both";
    }
    return "?";
}

Availability availability_from_string(const std::string& s) {
    if (s == "none") return Availability::none;
    if (s == "enc" || s == "encoders_only") return Availability::encoders_only;
    if (s == "dec" || s == "decoder_only") return Availability::decoder_only;
    if (s == "both") return Availability::both;
    throw InvalidParams("unknown availability: " + s);
}

void SideInfoSpec::validate() const {
    if (!(s1 >= 0.0) || !(s2 >= 0.0) || !std::isfinite(s1) || !std::isfinite(s2))
        throw InvalidParams("SideInfoSpec: gains must be finite and >= 0");
}

LinearCombo LinearCombo::normalized(double a1, double b1, double a2, double b2,
                                    const SideInfoSpec& spec, double rho) {
    spec.validate();
    check_rho(rho, "LinearCombo");
    if ((a1 == 0.0 && b1 == 0.0) || (a2 == 0.0 && b2 == 0.0))
        throw InvalidParams("LinearCombo: (a_i, b_i) must not both vanish");
    const double v1 = combo_variance(a1, b1, spec.s1, rho);
    const double v2 = combo_variance(a2, b2, spec.s2, rho);
    LinearCombo c;
    c.a1 = a1 / std::sqrt(v1);
    c.b1 = b1 / std::sqrt(v1);
    c.a2 = a2 / std::sqrt(v2);
    c.b2 = b2 / std::sqrt(v2);
    return c;
}

LinearCombo LinearCombo::from_angles(double theta1, double theta2, const SideInfoSpec& spec,
                                     double rho) {
    return normalized(std::cos(theta1), std::sin(theta1), std::cos(theta2), std::sin(theta2),
                      spec, rho);
}

LinearCombo LinearCombo::identity(const SideInfoSpec& spec, double rho) {
    return normalized(1.0, 0.0, 1.0, 0.0, spec, rho);
}

gauss::JointGaussian build_si_joint(const SideInfoSpec& spec, const LinearCombo& combo,
                                    double rho) {
    spec.validate();
    check_rho(rho, "build_si_joint");
    gauss::JointGaussian g = base_joint(spec, rho);
    g = gauss::extend(g, "L1", {{"U1", combo.a1}, {"Z1", combo.b1}});
    g = gauss::extend(g, "L2", {{"U2", combo.a2}, {"Z2", combo.b2}});
    return g;
}

gauss::JointGaussian af_si_joint(const SideInfoSpec& spec, const LinearCombo& combo,
                                 double p1, double p2, double sigma_n_sq, double rho) {
    spec.validate();
    check_rho(rho, "af_si_joint");
    if (!(p1 >= 0.0) || !(p2 >= 0.0)) throw InvalidParams("af_si_joint: powers must be >= 0");
    if (!(sigma_n_sq > 0.0)) throw InvalidParams("af_si_joint: noise variance must be > 0");
    check_combo(spec, combo, rho, "af_si_joint");
    gauss::JointGaussian g = base_joint(spec, rho);
    const double g1 = std::sqrt(p1), g2 = std::sqrt(p2);
    return gauss::extend(g, "Y",
                         {{"U1", g1 * combo.a1},
                          {"Z1", g1 * combo.b1},
                          {"U2", g2 * combo.a2},
                          {"Z2", g2 * combo.b2}},
                         sigma_n_sq);
}

gauss::JointGaussian orth_af_si_joint(const SideInfoSpec& spec, const LinearCombo& combo,
                                      double p1, double p2, double sigma_n1_sq,
                                      double sigma_n2_sq, double rho) {
    spec.validate();
    check_rho(rho, "orth_af_si_joint");
    if (!(sigma_n1_sq > 0.0) || !(sigma_n2_sq > 0.0))
        throw InvalidParams("orth_af_si_joint: noise variances must be > 0");
    check_combo(spec, combo, rho, "orth_af_si_joint");
    gauss::JointGaussian g = base_joint(spec, rho);
    g = gauss::extend(g, "Y1", {{"U1", std::sqrt(p1) * combo.a1}, {"Z1", std::sqrt(p1) * combo.b1}},
                      sigma_n1_sq);
    g = gauss::extend(g, "Y2", {{"U2", std::sqrt(p2) * combo.a2}, {"Z2", std::sqrt(p2) * combo.b2}},
                      sigma_n2_sq);
    return g;
}

DistortionPair af_si_distortion(const SideInfoSpec& spec, const LinearCombo& combo,
                                double p1, double p2, double sigma_n_sq, double rho) {
    const gauss::JointGaussian g = af_si_joint(spec, combo, p1, p2, sigma_n_sq, rho);
    const gauss::ConditionalLaw law = gauss::condition(g, with_decoder_si(spec, {"Y"}));
    return {law.cond_var("U1"), law.cond_var("U2")};
}

DistortionPair orth_af_si_distortion(const SideInfoSpec& spec, const LinearCombo& combo,
                                     double p1, double p2, double sigma_n1_sq,
                                     double sigma_n2_sq, double rho) {
    const gauss::JointGaussian g =
        orth_af_si_joint(spec, combo, p1, p2, sigma_n1_sq, sigma_n2_sq, rho);
    const gauss::ConditionalLaw law = gauss::condition(g, with_decoder_si(spec, {"Y1", "Y2"}));
    return {law.cond_var("U1"), law.cond_var("U2")};
}

namespace {

// Precomputed (U1,U2,Z1,Z2) base for repeated mixing evaluations; the
// per-direction work is one channel extension plus one conditioning,
// with arithmetic identical to the public evaluators.
struct AfMixEval {
    gauss::JointGaussian base;
    bool orth;
    double p1, p2, n1sq, n2sq;
    gauss::Labels observed;

    AfMixEval(const SideInfoSpec& spec, double rho, bool orth_channel, double p1_, double p2_,
              double n1sq_, double n2sq_)
        : base(base_joint(spec, rho)), orth(orth_channel), p1(p1_), p2(p2_), n1sq(n1sq_),
          n2sq(n2sq_) {
        observed = orth ? gauss::Labels{"Y1", "Y2"} : gauss::Labels{"Y"};
        observed = with_decoder_si(spec, observed);
    }

    DistortionPair operator()(const LinearCombo& c) const {
        gauss::JointGaussian g = base;
        if (orth) {
            g = gauss::extend(g, "Y1", {{"U1", std::sqrt(p1) * c.a1}, {"Z1", std::sqrt(p1) * c.b1}},
                              n1sq);
            g = gauss::extend(g, "Y2", {{"U2", std::sqrt(p2) * c.a2}, {"Z2", std::sqrt(p2) * c.b2}},
                              n2sq);
        } else {
            g = gauss::extend(g, "Y",
                              {{"U1", std::sqrt(p1) * c.a1},
                               {"Z1", std::sqrt(p1) * c.b1},
                               {"U2", std::sqrt(p2) * c.a2},
                               {"Z2", std::sqrt(p2) * c.b2}},
                              n1sq);
        }
        const gauss::ConditionalLaw law = gauss::condition(g, observed);
        return {law.cond_var("U1"), law.cond_var("U2")};
    }
};

// Shared encoder-mixing optimizer for the uncoded scheme.  Directions are
// scale-invariant, so (a_i, b_i) = (cos t, sin t), t in [0, pi), and the
// search runs on the same half-degree lattice the verification oracle
// uses; structure finer than the lattice is below the modeling
// resolution of the scheme.  The lattice starts at the no-mixing point
// (0, 0), so exact ties keep b1 = b2 = 0.
AfSiOptimum optimize_af_directions(
    const SideInfoSpec& spec, double rho,
    const std::function<DistortionPair(const LinearCombo&)>& eval) {
    AfSiOptimum best;
    best.combo = LinearCombo::identity(spec, rho);
    {
        const DistortionPair d = eval(best.combo);
        best.d1 = d.d1;
        best.d2 = d.d2;
        best.d_sum = d.sum();
    }
    if (!spec.at_encoders()) return best;

    const double pi = 3.14159265358979323846;
    const int n = 360;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == 0 && j == 0) continue; // identity already evaluated
            const LinearCombo c = LinearCombo::from_angles(pi * i / n, pi * j / n, spec, rho);
            const DistortionPair d = eval(c);
            if (d.sum() < best.d_sum) {
                best.combo = c;
                best.d1 = d.d1;
                best.d2 = d.d2;
                best.d_sum = d.sum();
            }
        }
    }
    return best;
}

} // namespace

AfSiOptimum optimize_af_si(const SideInfoSpec& spec, double p1, double p2,
                           double sigma_n_sq, double rho) {
    spec.validate();
    check_rho(rho, "optimize_af_si");
    if (!(p1 >= 0.0) || !(p2 >= 0.0)) throw InvalidParams("optimize_af_si: powers must be >= 0");
    if (!(sigma_n_sq > 0.0)) throw InvalidParams("optimize_af_si: noise variance must be > 0");
    const AfMixEval eval(spec, rho, false, p1, p2, sigma_n_sq, sigma_n_sq);
    return optimize_af_directions(spec, rho, eval);
}

AfSiOptimum optimize_orth_af_si(const SideInfoSpec& spec, double p1, double p2,
                                double sigma_n1_sq, double sigma_n2_sq, double rho) {
    spec.validate();
    check_rho(rho, "optimize_orth_af_si");
    if (!(p1 >= 0.0) || !(p2 >= 0.0))
        throw InvalidParams("optimize_orth_af_si: powers must be >= 0");
    if (!(sigma_n1_sq > 0.0) || !(sigma_n2_sq > 0.0))
        throw InvalidParams("optimize_orth_af_si: noise variances must be > 0");
    const AfMixEval eval(spec, rho, true, p1, p2, sigma_n1_sq, sigma_n2_sq);
    return optimize_af_directions(spec, rho, eval);
}

namespace {

// ---- coded schemes under the Gaussian forward test channel ----------

struct CodedModel {
    SideInfoSpec spec;
    LinearCombo combo;
    double rho;
    bool is_lt;               // channel inputs are scaled W_i
    double p1, p2;            // used by the LT caps
    double sigma_n_sq;        // GMAC noise (LT)
    double cap1, cap2, capsum;// fixed caps (separation-based case)
};

struct CodedEval {
    double l1, l2, lsum;   // required rates
    double c1, c2, csum;   // available rates
    double d1, d2;
    double violation() const {
        return std::max({l1 - c1, l2 - c2, lsum - csum});
    }
};

gauss::JointGaussian coded_joint(const CodedModel& m, double q1, double q2) {
    gauss::JointGaussian g = base_joint(m.spec, m.rho);
    g = gauss::extend(g, "W1", {{"U1", m.combo.a1}, {"Z1", m.combo.b1}}, q1);
    g = gauss::extend(g, "W2", {{"U2", m.combo.a2}, {"Z2", m.combo.b2}}, q2);
    if (m.is_lt) {
        const double c1 = std::sqrt(m.p1 / (1.0 + q1));
        const double c2 = std::sqrt(m.p2 / (1.0 + q2));
        g = gauss::extend(g, "Y", {{"W1", c1}, {"W2", c2}}, m.sigma_n_sq);
    }
    return g;
}

CodedEval eval_coded(const CodedModel& m, double q1, double q2) {
    const gauss::JointGaussian g = coded_joint(m, q1, q2);
    const gauss::Labels zdec = m.spec.at_decoder() ? gauss::Labels{"Z1", "Z2"} : gauss::Labels{};
    auto with_z = [&](gauss::Labels l) {
        for (const auto& z : zdec) l.push_back(z);
        return l;
    };

    CodedEval e;
    e.l1 = gauss::conditional_mutual_information(g, {"U1", "Z1"}, {"W1"}, with_z({"W2"}));
    e.l2 = gauss::conditional_mutual_information(g, {"U2", "Z2"}, {"W2"}, with_z({"W1"}));
    e.lsum = gauss::conditional_mutual_information(g, {"U1", "U2", "Z1", "Z2"}, {"W1", "W2"},
                                                   with_z({}));
    if (m.is_lt) {
        e.c1 = gauss::conditional_mutual_information(g, {"W1"}, {"Y"}, with_z({"W2"}));
        e.c2 = gauss::conditional_mutual_information(g, {"W2"}, {"Y"}, with_z({"W1"}));
        e.csum = gauss::conditional_mutual_information(g, {"W1", "W2"}, {"Y"}, with_z({}));
    } else {
        e.c1 = m.cap1;
        e.c2 = m.cap2;
        e.csum = m.capsum;
    }
    const gauss::ConditionalLaw law = gauss::condition(g, with_z({"W1", "W2"}));
    e.d1 = law.cond_var("U1");
    e.d2 = law.cond_var("U2");
    return e;
}

// Distortion with zero-rate quantizers (no channel): decoder falls back
// to its side information, if any.
SiSchemeResult zero_rate_result(const CodedModel& m) {
    SiSchemeResult r;
    const gauss::JointGaussian g = base_joint(m.spec, m.rho);
    if (m.spec.at_decoder()) {
        const gauss::ConditionalLaw law = gauss::condition(g, {"Z1", "Z2"});
        r.d1 = law.cond_var("U1");
        r.d2 = law.cond_var("U2");
    } else {
        r.d1 = g.var("U1");
        r.d2 = g.var("U2");
    }
    r.d_sum = r.d1 + r.d2;
    r.q1 = r.q2 = std::numeric_limits<double>::infinity();
    return r;
}

SiSchemeResult pack_result(const CodedModel& m, double q1, double q2) {
    const CodedEval e = eval_coded(m, q1, q2);
    SiSchemeResult r;
    r.d1 = e.d1;
    r.d2 = e.d2;
    r.d_sum = e.d1 + e.d2;
    r.q1 = q1;
    r.q2 = q2;
    r.r1 = e.l1;
    r.r2 = e.l2;
    r.feasible = e.violation() <= 1e-8;
    return r;
}

bool symmetric_model(const CodedModel& m) {
    return m.spec.s1 == m.spec.s2 && m.combo.a1 == m.combo.a2 && m.combo.b1 == m.combo.b2 &&
           m.p1 == m.p2 && m.cap1 == m.cap2;
}

// Smallest feasible common quantizer noise: the constraint surplus is
// +inf as q -> 0 and negative for large q whenever the caps are positive,
// so a scan plus bisection pins the root to machine precision.  The scan
// window keeps every pivot of the assembled joints well clear of the
// singularity floor.
SiSchemeResult solve_symmetric(const CodedModel& m) {
    constexpr double kLqLo = -25.0, kLqHi = 35.0;
    auto surplus = [&](double lq) {
        const double q = std::exp(lq);
        return eval_coded(m, q, q).violation();
    };
    if (surplus(kLqLo) <= 0.0) return pack_result(m, std::exp(kLqLo), std::exp(kLqLo));
    double lq = 0.0;
    if (!optim::scan_root(surplus, kLqLo, kLqHi, 320, &lq)) return zero_rate_result(m);
    const double q = std::exp(lq);
    return pack_result(m, q, q);
}

// General case: two-variable simplex search on (ln q1, ln q2) with
// penalized constraint violation, restarted on a 5x5 grid.
SiSchemeResult solve_general(const CodedModel& m) {
    auto penalized = [&](const std::vector<double>& x) {
        const CodedEval e = eval_coded(m, std::exp(x[0]), std::exp(x[1]));
        return e.d1 + e.d2 + 1e4 * std::max(0.0, e.violation());
    };
    double best_f = std::numeric_limits<double>::infinity();
    std::vector<double> best_x{0.0, 0.0};
    for (double x0 : {-4.0, -2.0, 0.0, 2.0, 4.0}) {
        for (double y0 : {-4.0, -2.0, 0.0, 2.0, 4.0}) {
            const auto nm = optim::nelder_mead(penalized, {x0, y0}, 0.5, 1e-8, 1500);
            if (nm.fx < best_f) {
                best_f = nm.fx;
                best_x = nm.x;
            }
        }
    }
    SiSchemeResult r = pack_result(m, std::exp(best_x[0]), std::exp(best_x[1]));
    const SiSchemeResult zero = zero_rate_result(m);
    if (!r.feasible) return zero;
    return zero.d_sum < r.d_sum ? zero : r;
}

SiSchemeResult solve_coded(const CodedModel& m) {
    if (!m.is_lt && m.capsum <= 1e-12) return zero_rate_result(m);
    if (m.is_lt && m.p1 <= 0.0 && m.p2 <= 0.0) return zero_rate_result(m);
    if (symmetric_model(m)) return solve_symmetric(m);
    return solve_general(m);
}

CodedModel make_model(const SideInfoSpec& spec, const LinearCombo& combo, double rho,
                      const char* what) {
    spec.validate();
    check_rho(rho, what);
    check_combo(spec, combo, rho, what);
    CodedModel m;
    m.spec = spec;
    m.combo = combo;
    m.rho = rho;
    return m;
}

} // namespace

SiSchemeResult sb_si_distortion(const SideInfoSpec& spec, const LinearCombo& combo,
                                double p1, double p2, double sigma_n_sq, double rho) {
    if (!(p1 >= 0.0) || !(p2 >= 0.0)) throw InvalidParams("sb_si_distortion: powers must be >= 0");
    if (!(sigma_n_sq > 0.0)) throw InvalidParams("sb_si_distortion: noise variance must be > 0");
    CodedModel m = make_model(spec, combo, rho, "sb_si_distortion");
    m.is_lt = false;
    m.p1 = p1;
    m.p2 = p2;
    m.sigma_n_sq = sigma_n_sq;
    m.cap1 = 0.5 * std::log2(1.0 + p1 / sigma_n_sq);
    m.cap2 = 0.5 * std::log2(1.0 + p2 / sigma_n_sq);
    m.capsum = 0.5 * std::log2(1.0 + (p1 + p2) / sigma_n_sq);
    return solve_coded(m);
}

SiSchemeResult lt_si_distortion(const SideInfoSpec& spec, const LinearCombo& combo,
                                double p1, double p2, double sigma_n_sq, double rho) {
    if (!(p1 >= 0.0) || !(p2 >= 0.0)) throw InvalidParams("lt_si_distortion: powers must be >= 0");
    if (!(sigma_n_sq > 0.0)) throw InvalidParams("lt_si_distortion: noise variance must be > 0");
    CodedModel m = make_model(spec, combo, rho, "lt_si_distortion");
    m.is_lt = true;
    m.p1 = p1;
    m.p2 = p2;
    m.sigma_n_sq = sigma_n_sq;
    m.cap1 = m.cap2 = m.capsum = 0.0;
    return solve_coded(m);
}

SiSchemeResult orth_sb_si_distortion(const SideInfoSpec& spec, const LinearCombo& combo,
                                     double p1, double p2, double sigma_n1_sq,
                                     double sigma_n2_sq, double rho) {
    if (!(p1 >= 0.0) || !(p2 >= 0.0))
        throw InvalidParams("orth_sb_si_distortion: powers must be >= 0");
    if (!(sigma_n1_sq > 0.0) || !(sigma_n2_sq > 0.0))
        throw InvalidParams("orth_sb_si_distortion: noise variances must be > 0");
    CodedModel m = make_model(spec, combo, rho, "orth_sb_si_distortion");
    m.is_lt = false;
    m.p1 = p1;
    m.p2 = p2;
    m.sigma_n_sq = sigma_n1_sq;
    m.cap1 = 0.5 * std::log2(1.0 + p1 / sigma_n1_sq);
    m.cap2 = 0.5 * std::log2(1.0 + p2 / sigma_n2_sq);
    m.capsum = m.cap1 + m.cap2;
    return solve_coded(m);
}

namespace {

// Symmetric encoder-mixing search for a coded scheme: one angle, golden
// section against a line scan, with the no-mixing point kept as an exact
// candidate.
SiSchemeResult optimize_coded_directions(
    const SideInfoSpec& spec, double rho,
    const std::function<SiSchemeResult(const LinearCombo&)>& eval) {
    SiSchemeResult best = eval(LinearCombo::identity(spec, rho));
    if (!spec.at_encoders()) return best;

    const double pi = 3.14159265358979323846;
    auto objective = [&](double t) {
        return eval(LinearCombo::from_angles(t, t, spec, rho)).d_sum;
    };
    const int n = 48;
    double t_best = 0.0, f_best = best.d_sum;
    for (int i = 1; i < n; ++i) {
        const double t = pi * i / n;
        const double v = objective(t);
        if (v < f_best) {
            f_best = v;
            t_best = t;
        }
    }
    if (t_best > 0.0) {
        const double lo = std::max(0.0, t_best - pi / n);
        const double hi = std::min(pi * (1.0 - 1e-9), t_best + pi / n);
        const double t = optim::golden_min(objective, lo, hi, 1e-10);
        if (objective(t) < best.d_sum - 1e-12)
            return eval(LinearCombo::from_angles(t, t, spec, rho));
    }
    return best;
}

} // namespace

SiSchemeResult optimize_sb_si(const SideInfoSpec& spec, double power, double sigma_n_sq,
                              double rho) {
    return optimize_coded_directions(spec, rho, [&](const LinearCombo& c) {
        return sb_si_distortion(spec, c, power, power, sigma_n_sq, rho);
    });
}

SiSchemeResult optimize_lt_si(const SideInfoSpec& spec, double power, double sigma_n_sq,
                              double rho) {
    return optimize_coded_directions(spec, rho, [&](const LinearCombo& c) {
        return lt_si_distortion(spec, c, power, power, sigma_n_sq, rho);
    });
}

SiSchemeResult optimize_orth_sb_si(const SideInfoSpec& spec, double power,
                                   double sigma_n_sq, double rho) {
    return optimize_coded_directions(spec, rho, [&](const LinearCombo& c) {
        return orth_sb_si_distortion(spec, c, power, power, sigma_n_sq, sigma_n_sq, rho);
    });
}

std::vector<OrthCompareRow> orth_si_compare(double s, double snr, double rho) {
    if (!(s >= 0.0)) throw InvalidParams("orth_si_compare: gain must be >= 0");
    if (!(snr >= 0.0)) throw InvalidParams("orth_si_compare: SNR must be >= 0");
    check_rho(rho, "orth_si_compare");

    std::vector<OrthCompareRow> rows;
    for (Availability av : {Availability::none, Availability::encoders_only,
                            Availability::decoder_only, Availability::both}) {
        SideInfoSpec spec{s, s, av};
        const AfSiOptimum af = optimize_orth_af_si(spec, snr, snr, 1.0, 1.0, rho);
        rows.push_back({"AF", av, af.d_sum});
        const SiSchemeResult sbr = optimize_orth_sb_si(spec, snr, 1.0, rho);
        rows.push_back({"SB", av, sbr.d_sum});
    }
    return rows;
}

} // namespace jscc::si
