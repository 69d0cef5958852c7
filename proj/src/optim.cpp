#include "jscc/optim.hpp"

#include <algorithm>
#include <cmath>

namespace jscc::optim {

double golden_min(const Fn1& f, double lo, double hi, double tol, int max_iter) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

std::pair<double, double> bracket_min(const Fn1& f, double x0, double step,
                                      double hi_cap) {
    double prev = x0;
    double cur = std::min(x0 + step, hi_cap);
    double f_prev = f(prev), f_cur = f(cur);
    while (cur < hi_cap && f_cur < f_prev) {
        prev = cur;
        f_prev = f_cur;
        step *= 2.0;
        cur = std::min(cur + step, hi_cap);
        f_cur = f(cur);
    }
    return {std::max(x0, prev - step), cur};
}

double bisect_root(const Fn1& f, double lo, double hi, int iters) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

bool scan_root(const Fn1& f, double lo, double hi, int n, double* root) {
    double prev_x = lo;
    double prev_f = f(lo);
    double found_lo = 0.0, found_hi = 0.0;
    bool found = false;
    for (int i = 1; i <= n; ++i) {
        const double x = lo + (hi - lo) * i / n;
        const double fx = f(x);
        if (prev_f == 0.0 || (fx > 0.0) != (prev_f > 0.0)) {
            found = true;
            found_lo = prev_x;
            found_hi = x;
        }
        prev_x = x;
        prev_f = fx;
    }
    if (!found) return false;
    *root = bisect_root(f, found_lo, found_hi);
    return true;
}

NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     std::vector<double> x0, double step, double tol, int max_iter) {
    const size_t n = x0.size();
    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
    int evals = 0;
    for (size_t i = 0; i <= n; ++i) {
        fv[i] = f(simplex[i]);
        ++evals;
    }

    auto order = [&]() {
        std::vector<size_t> idx(n + 1);
        for (size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> f2;
        for (size_t i : idx) {
            s2.push_back(simplex[i]);
            f2.push_back(fv[i]);
        }
        simplex = std::move(s2);
        fv = std::move(f2);
    };

    for (int it = 0; it < max_iter; ++it) {
        order();
        double spread = 0.0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j <= n; ++j)
                spread = std::max(spread, std::fabs(simplex[j][i] - simplex[0][i]));
        if (spread < tol && std::fabs(fv[n] - fv[0]) < tol) break;

        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (size_t j = 0; j < n; ++j) centroid[j] /= static_cast<double>(n);

        auto combine = [&](double t) {
            std::vector<double> x(n);
            for (size_t j = 0; j < n; ++j)
                x[j] = centroid[j] + t * (simplex[n][j] - centroid[j]);
            return x;
        };

        std::vector<double> xr = combine(-1.0);
        double fr = f(xr);
        ++evals;
        if (fr < fv[0]) {
            std::vector<double> xe = combine(-2.0);
            double fe = f(xe);
            ++evals;
            if (fe < fr) {
                simplex[n] = xe;
                fv[n] = fe;
            } else {
                simplex[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            simplex[n] = xr;
            fv[n] = fr;
        } else {
            std::vector<double> xc = combine(fr < fv[n] ? -0.5 : 0.5);
            double fc = f(xc);
            ++evals;
            if (fc < std::min(fr, fv[n])) {
                simplex[n] = xc;
                fv[n] = fc;
            } else {
                for (size_t i = 1; i <= n; ++i) {
                    for (size_t j = 0; j < n; ++j)
                        simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                    fv[i] = f(simplex[i]);
                    ++evals;
                }
            }
        }
    }
    order();
    return {simplex[0], fv[0], evals};
}

} // namespace jscc::optim
