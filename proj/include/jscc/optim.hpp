#ifndef JSCC_OPTIM_HPP
#define JSCC_OPTIM_HPP

#include <functional>
#include <vector>

namespace jscc::optim {

using Fn1 = std::function<double(double)>;

/// Golden-section minimization on [lo, hi]; returns the abscissa.
double golden_min(const Fn1& f, double lo, double hi, double tol = 1e-12,
                  int max_iter = 400);

/// Expands [x0, x0+step] geometrically until f starts increasing, then
/// returns a bracket [lo, hi] containing a minimizer.
std::pair<double, double> bracket_min(const Fn1& f, double x0, double step,
                                      double hi_cap);

/// Bisection for a root of f on [lo, hi]; requires f(lo) and f(hi) of
/// opposite (or zero) sign.
double bisect_root(const Fn1& f, double lo, double hi, int iters = 200);

/// Scans n points on [lo, hi], locates the last sign change of f, and
/// bisects it.  Returns false if f never changes sign.
bool scan_root(const Fn1& f, double lo, double hi, int n, double* root);

struct NmResult {
    std::vector<double> x;
    double fx;
    int evals;
};

/// Nelder-Mead in low dimension.  step sets the initial simplex size.
NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     std::vector<double> x0, double step, double tol = 1e-10,
                     int max_iter = 2000);

} // namespace jscc::optim

#endif
