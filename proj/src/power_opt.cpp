#include "jscc/power_opt.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "jscc/errors.hpp"
#include "jscc/lt.hpp"
#include "jscc/optim.hpp"
#include "jscc/sb.hpp"

namespace jscc::popt {

namespace {

void check_common(double rho, double beta1, double beta2, const char* what) {
    if (!(rho >= 0.0 && rho < 1.0)) throw InvalidParams(std::string(what) + ": rho must lie in [0,1)");
    if (!(beta1 > 0.0) || !(beta2 > 0.0))
        throw InvalidParams(std::string(what) + ": weights must be > 0");
}

struct Grad {
    double fa, fb;
};

Grad af_gradient(double a, double b, double rho, double beta1, double beta2) {
    const double c = 1.0 - rho * rho;
    const double g = a + b + 2.0 * rho * std::sqrt(a * b) + 1.0;
    const double num = beta1 * (b * c + 1.0) + beta2 * (a * c + 1.0);
    const double ga = 1.0 + (a > 0.0 ? rho * std::sqrt(b / a) : 0.0);
    const double gb = 1.0 + (b > 0.0 ? rho * std::sqrt(a / b) : 0.0);
    Grad gr;
    gr.fa = (beta2 * c * g - num * ga) / (g * g);
    gr.fb = (beta1 * c * g - num * gb) / (g * g);
    return gr;
}

} // namespace

double af_weighted_objective(double a, double b, double rho, double beta1, double beta2) {
    if (!(a >= 0.0) || !(b >= 0.0))
        throw InvalidParams("af_weighted_objective: powers must be >= 0");
    check_common(rho, beta1, beta2, "af_weighted_objective");
    const double c = 1.0 - rho * rho;
    const double g = a + b + 2.0 * rho * std::sqrt(a * b) + 1.0;
    return (beta1 * (b * c + 1.0) + beta2 * (a * c + 1.0)) / g;
}

double af_critical_power(double a, double rho) {
    if (!(a > 0.0)) throw InvalidParams("af_critical_power: a must be > 0");
    if (rho == 0.0)
        throw DegenerateCorrelation(
            "af_critical_power: undefined at rho = 0 (objective is monotone in b)");
    if (!(rho > 0.0 && rho < 1.0)) throw InvalidParams("af_critical_power: rho must lie in (0,1)");
    const double c = 1.0 - rho * rho;
    const double onep = 1.0 + rho * rho;
    const double disc = onep * onep + 4.0 * a * rho * rho * c * (a * c + 2.0);
    const double root = (onep + std::sqrt(disc)) / (2.0 * std::sqrt(a) * rho * c);
    return root * root;
}

PowerSolution optimize_af_powers(double p1, double p2, double rho, double beta1,
                                 double beta2) {
    if (!(p1 > 0.0) || !(p2 > 0.0)) throw InvalidParams("optimize_af_powers: P1, P2 must be > 0");
    check_common(rho, beta1, beta2, "optimize_af_powers");

    auto f = [&](double a, double b) { return af_weighted_objective(a, b, rho, beta1, beta2); };

    std::vector<std::pair<double, double>> cands;
    cands.emplace_back(p1, p2); // full power first so exact ties keep it
    if (rho > 0.0 && beta1 == beta2) {
        cands.emplace_back(p1, std::min(af_critical_power(p1, rho), p2));
        cands.emplace_back(std::min(af_critical_power(p2, rho), p1), p2);
    }
    // boundary line searches (cover weighted cases where the closed form
    // does not apply)
    auto line_b = [&](double a_fixed) {
        return optim::golden_min([&](double b) { return f(a_fixed, b); }, 0.0, p2, 1e-11);
    };
    auto line_a = [&](double b_fixed) {
        return optim::golden_min([&](double a) { return f(a, b_fixed); }, 0.0, p1, 1e-11);
    };
    cands.emplace_back(p1, line_b(p1));
    cands.emplace_back(line_a(p2), p2);
    cands.emplace_back(0.0, line_b(0.0));
    cands.emplace_back(line_a(0.0), 0.0);
    cands.emplace_back(0.0, 0.0);
    cands.emplace_back(p1, 0.0);
    cands.emplace_back(0.0, p2);

    // damped Newton on the gradient from a 3x3 grid of interior starts
    for (double fa : {0.2, 0.5, 0.8}) {
        for (double fb : {0.2, 0.5, 0.8}) {
            double a = fa * p1, b = fb * p2;
            for (int it = 0; it < 80; ++it) {
                const Grad gr = af_gradient(a, b, rho, beta1, beta2);
                const double gnorm = std::hypot(gr.fa, gr.fb);
                if (gnorm < 1e-12) break;
                const double h = 1e-6;
                const double ha = h * std::max(1.0, a), hb = h * std::max(1.0, b);
                const Grad gpa = af_gradient(std::min(a + ha, p1), b, rho, beta1, beta2);
                const Grad gma = af_gradient(std::max(a - ha, 1e-12), b, rho, beta1, beta2);
                const Grad gpb = af_gradient(a, std::min(b + hb, p2), rho, beta1, beta2);
                const Grad gmb = af_gradient(a, std::max(b - hb, 1e-12), rho, beta1, beta2);
                Eigen::Matrix2d hess;
                hess(0, 0) = (gpa.fa - gma.fa) / (2.0 * ha);
                hess(0, 1) = (gpb.fa - gmb.fa) / (2.0 * hb);
                hess(1, 0) = (gpa.fb - gma.fb) / (2.0 * ha);
                hess(1, 1) = (gpb.fb - gmb.fb) / (2.0 * hb);
                Eigen::Vector2d gv(gr.fa, gr.fb);
                Eigen::Vector2d step = hess.fullPivLu().solve(-gv);
                if (!step.allFinite() || step.norm() > 10.0 * (p1 + p2))
                    step = -gv * (p1 + p2); // gradient fallback
                double tau = 1.0;
                const double f0 = f(a, b);
                double na = a, nb = b;
                for (int bt = 0; bt < 30; ++bt) {
                    na = std::clamp(a + tau * step(0), 1e-12, p1);
                    nb = std::clamp(b + tau * step(1), 1e-12, p2);
                    if (f(na, nb) < f0) break;
                    tau *= 0.5;
                }
                if (std::fabs(na - a) < 1e-14 * p1 && std::fabs(nb - b) < 1e-14 * p2) break;
                a = na;
                b = nb;
            }
            cands.emplace_back(a, b);
        }
    }

    PowerSolution sol;
    sol.a_star = cands[0].first;
    sol.b_star = cands[0].second;
    sol.d_min = f(sol.a_star, sol.b_star);
    for (const auto& [a, b] : cands) {
        const double v = f(a, b);
        if (v < sol.d_min - 1e-15) {
            sol.d_min = v;
            sol.a_star = a;
            sol.b_star = b;
        }
    }

    sol.a_at_bound = sol.a_star >= p1 * (1.0 - 1e-9);
    sol.b_at_bound = sol.b_star >= p2 * (1.0 - 1e-9);
    const Grad gr = af_gradient(std::max(sol.a_star, 1e-12), std::max(sol.b_star, 1e-12), rho,
                                beta1, beta2);
    auto coord_resid = [](double x, double hi, double grad) {
        if (x >= hi * (1.0 - 1e-9)) return std::max(0.0, grad);   // at upper bound
        if (x <= hi * 1e-12) return std::max(0.0, -grad);         // at lower bound
        return std::fabs(grad);
    };
    sol.kkt_residual =
        std::max(coord_resid(sol.a_star, p1, gr.fa), coord_resid(sol.b_star, p2, gr.fb));
    return sol;
}

double lt_weighted_objective(double r1, double r2, double rho, double sigma1_sq,
                             double sigma2_sq, double beta1, double beta2) {
    check_common(rho, beta1, beta2, "lt_weighted_objective");
    const DistortionPair d = lt::lt_distortions(r1, r2, rho, sigma1_sq, sigma2_sq);
    return beta1 * d.d1 + beta2 * d.d2;
}

namespace {

// rho_tilde consistency fixed point for a given sum-rate split.
struct SplitRates {
    double r1, r2, rho_tilde;
};

SplitRates lt_rates_for_split(double a, double b, double rho, double t) {
    auto rates_at = [&](double x) {
        const lt::RateBounds rb = lt::lt_rate_bounds(a, b, x, 1.0);
        double r1 = std::min(t * rb.sum_max, rb.r1_max);
        double r2 = std::min(rb.sum_max - r1, rb.r2_max);
        r2 = std::max(r2, 0.0);
        return std::make_pair(r1, r2);
    };
    auto residual = [&](double x) {
        const auto [r1, r2] = rates_at(x);
        return lt::lt_rho_tilde(r1, r2, rho) - x;
    };
    double x = 0.0;
    double res = residual(x);
    for (int it = 0; it < 200 && std::fabs(res) > 1e-13; ++it) {
        x = std::clamp(x + 0.5 * res, 0.0, rho);
        res = residual(x);
    }
    if (std::fabs(res) > 1e-10 && rho > 0.0) x = optim::bisect_root(residual, 0.0, rho, 200);
    const auto [r1, r2] = rates_at(x);
    return {r1, r2, x};
}

} // namespace

LtPowerResult lt_optimize_asymmetric(double a, double b, double rho, double beta1,
                                     double beta2) {
    if (!(a >= 0.0) || !(b >= 0.0)) throw InvalidParams("lt_optimize_asymmetric: powers must be >= 0");
    check_common(rho, beta1, beta2, "lt_optimize_asymmetric");

    LtPowerResult out;
    if (a == 0.0 && b == 0.0) {
        out.objective = beta1 + beta2;
        return out;
    }

    auto objective = [&](double t) {
        const SplitRates sr = lt_rates_for_split(a, b, rho, t);
        return lt_weighted_objective(sr.r1, sr.r2, rho, 1.0, 1.0, beta1, beta2);
    };
    // the clamped objective need not be unimodal in the split, so locate
    // the best cell by scan before polishing
    const int n = 100;
    double t_best = 0.5, f_best = objective(0.5);
    for (int i = 0; i <= n; ++i) {
        const double t = 1e-6 + (1.0 - 2e-6) * i / n;
        const double v = objective(t);
        if (v < f_best) {
            f_best = v;
            t_best = t;
        }
    }
    const double width = (1.0 - 2e-6) / n;
    const double t_star = optim::golden_min(objective, std::max(1e-6, t_best - width),
                                            std::min(1.0 - 1e-6, t_best + width), 1e-10);
    const SplitRates sr = lt_rates_for_split(a, b, rho, t_star);
    out.r1 = sr.r1;
    out.r2 = sr.r2;
    out.rho_tilde = sr.rho_tilde;
    out.objective = lt_weighted_objective(sr.r1, sr.r2, rho, 1.0, 1.0, beta1, beta2);
    return out;
}

bool verify_full_power_optimal(Scheme scheme, double p1, double p2, double rho) {
    if (!(p1 > 0.0) || !(p2 > 0.0))
        throw InvalidParams("verify_full_power_optimal: P1, P2 must be > 0");
    if (!(rho >= 0.0 && rho < 1.0))
        throw InvalidParams("verify_full_power_optimal: rho must lie in [0,1)");
    if (scheme == Scheme::AF)
        throw UnsupportedScheme(
            "verify_full_power_optimal: AF power allocation is handled by optimize_af_powers");

    auto objective = [&](double a, double b) {
        if (scheme == Scheme::SB) {
            const sb::SbAsymmetric r = sb::sb_gmac_asymmetric(a, b, 1.0, rho, 1.0, 1.0, true);
            return r.d1 + r.d2;
        }
        return lt_optimize_asymmetric(a, b, rho).objective;
    };

    const double full = objective(p1, p2);
    for (int i = 1; i <= 20; ++i) {
        for (int j = 1; j <= 20; ++j) {
            if (objective(p1 * i / 20.0, p2 * j / 20.0) < full - 1e-9) return false;
        }
    }
    return true;
}

} // namespace jscc::popt
