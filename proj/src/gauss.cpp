#include "jscc/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace jscc::gauss {

namespace {

constexpr double kPsdTol = 1e-10;  // relative to trace
constexpr double kSingTol = 1e-12; // relative to trace

double log2_e() { return 1.4426950408889634; }

// Cholesky with a single jitter retry; covariances here are at most
// 16x16 and assembled from model parameters.
Eigen::LLT<Eigen::MatrixXd> robust_llt(const Eigen::MatrixXd& m, const char* what) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() == Eigen::Success) return llt;
    Eigen::MatrixXd jittered = m;
    jittered.diagonal().array() += 1e-12 * m.trace();
    llt.compute(jittered);
    if (llt.info() != Eigen::Success)
        throw SingularObservation(std::string(what) + ": covariance block is not positive definite");
    return llt;
}

double logdet2_checked(const Eigen::MatrixXd& m, const char* what) {
    if (m.rows() == 0) return 0.0;
    auto llt = robust_llt(m, what);
    double logdet = 0.0;
    const auto& l = llt.matrixLLT();
    for (int i = 0; i < m.rows(); ++i) {
        const double pivot = l(i, i) * l(i, i);
        // scale-aware: each pivot is checked against its own variance
        if (!(pivot > kSingTol * std::max(m(i, i), 1e-300)))
            throw SingularObservation(std::string(what) + ": determinant underflow");
        logdet += std::log(pivot);
    }
    return logdet * log2_e();
}

} // namespace

JointGaussian::JointGaussian(Labels labels, Eigen::MatrixXd cov)
    : labels_(std::move(labels)), cov_(std::move(cov)) {
    const int n = static_cast<int>(labels_.size());
    if (n == 0) throw InvalidParams("JointGaussian: empty label set");
    if (n > kMaxDim) throw InvalidParams("JointGaussian: dimension exceeds cap of 16");
    if (cov_.rows() != n || cov_.cols() != n)
        throw InvalidParams("JointGaussian: covariance order does not match label count");
    std::set<std::string> uniq(labels_.begin(), labels_.end());
    if (static_cast<int>(uniq.size()) != n)
        throw InvalidParams("JointGaussian: labels must be unique");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (cov_(i, j) != cov_(j, i))
                throw InvalidParams("JointGaussian: covariance is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov_, Eigen::EigenvaluesOnly);
    const double tol = kPsdTol * std::max(cov_.trace(), 1.0);
    if (es.eigenvalues().minCoeff() < -tol)
        throw InvalidParams("JointGaussian: covariance is not positive semidefinite");
}

int JointGaussian::index_of(const std::string& label) const {
    for (int i = 0; i < dim(); ++i)
        if (labels_[i] == label) return i;
    throw UnknownLabel("unknown dimension: " + label);
}

bool JointGaussian::has_label(const std::string& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

double JointGaussian::var(const std::string& label) const {
    const int i = index_of(label);
    return cov_(i, i);
}

double JointGaussian::cov_of(const std::string& a, const std::string& b) const {
    return cov_(index_of(a), index_of(b));
}

JointGaussian JointGaussian::marginal(const Labels& keep) const {
    const int k = static_cast<int>(keep.size());
    Eigen::MatrixXd sub(k, k);
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = index_of(keep[i]);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = cov_(idx[i], idx[j]);
    return JointGaussian(keep, std::move(sub));
}

JointGaussian extend(const JointGaussian& g, const std::string& new_label,
                     const std::vector<std::pair<std::string, double>>& weights,
                     double noise_var) {
    if (noise_var < 0.0) throw InvalidParams("extend: negative noise variance");
    if (g.has_label(new_label)) throw InvalidParams("extend: duplicate label " + new_label);
    const int n = g.dim();
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    for (const auto& [label, coeff] : weights) w(g.index_of(label)) += coeff;

    Eigen::MatrixXd cov(n + 1, n + 1);
    cov.topLeftCorner(n, n) = g.cov();
    Eigen::VectorXd cross = g.cov() * w;
    cov.block(0, n, n, 1) = cross;
    cov.block(n, 0, 1, n) = cross.transpose();
    cov(n, n) = w.dot(cross) + noise_var;

    Labels labels = g.labels();
    labels.push_back(new_label);
    return JointGaussian(std::move(labels), std::move(cov));
}

double ConditionalLaw::cond_var(const std::string& label) const {
    for (size_t i = 0; i < unobserved.size(); ++i)
        if (unobserved[i] == label) return cond_cov(static_cast<int>(i), static_cast<int>(i));
    throw UnknownLabel("cond_var: " + label + " is not an unobserved dimension");
}

Eigen::VectorXd ConditionalLaw::coefficients(const std::string& label) const {
    for (size_t i = 0; i < unobserved.size(); ++i)
        if (unobserved[i] == label) return mean_map.row(static_cast<int>(i));
    throw UnknownLabel("coefficients: " + label + " is not an unobserved dimension");
}

ConditionalLaw condition(const JointGaussian& g, const Labels& observed) {
    std::vector<int> obs_idx;
    obs_idx.reserve(observed.size());
    std::set<int> obs_set;
    for (const auto& label : observed) {
        const int i = g.index_of(label);
        if (!obs_set.insert(i).second)
            throw InvalidParams("condition: repeated observed label " + label);
        obs_idx.push_back(i);
    }

    ConditionalLaw law;
    law.observed = observed;
    std::vector<int> un_idx;
    for (int i = 0; i < g.dim(); ++i) {
        if (obs_set.count(i) == 0) {
            un_idx.push_back(i);
            law.unobserved.push_back(g.labels()[i]);
        }
    }

    const int no = static_cast<int>(obs_idx.size());
    const int nu = static_cast<int>(un_idx.size());
    Eigen::MatrixXd s_oo(no, no), s_uo(nu, no), s_uu(nu, nu);
    for (int i = 0; i < no; ++i)
        for (int j = 0; j < no; ++j) s_oo(i, j) = g.cov()(obs_idx[i], obs_idx[j]);
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < no; ++j) s_uo(i, j) = g.cov()(un_idx[i], obs_idx[j]);
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nu; ++j) s_uu(i, j) = g.cov()(un_idx[i], un_idx[j]);

    if (no == 0) {
        law.mean_map = Eigen::MatrixXd::Zero(nu, 0);
        law.cond_cov = s_uu;
        return law;
    }

    {
        // scale-invariant singularity test on the correlation form
        Eigen::VectorXd d = s_oo.diagonal();
        for (int i = 0; i < no; ++i)
            if (!(d(i) > 0.0))
                throw SingularObservation("condition: observed dimension has zero variance");
        const Eigen::VectorXd inv_sd = d.cwiseSqrt().cwiseInverse();
        const Eigen::MatrixXd corr = inv_sd.asDiagonal() * s_oo * inv_sd.asDiagonal();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(corr, Eigen::EigenvaluesOnly);
        if (!(es.eigenvalues().minCoeff() > kSingTol))
            throw SingularObservation("condition: observed block is numerically singular");
    }

    auto llt = robust_llt(s_oo, "condition");
    law.mean_map = llt.solve(s_uo.transpose()).transpose();
    law.cond_cov = s_uu - law.mean_map * s_uo.transpose();
    // symmetrize away factorization round-off
    law.cond_cov = 0.5 * (law.cond_cov + law.cond_cov.transpose()).eval();
    return law;
}

double conditional_variance(const JointGaussian& g, const std::string& target,
                            const Labels& observed) {
    return condition(g, observed).cond_var(target);
}

double mutual_information(const JointGaussian& g, const Labels& a, const Labels& b) {
    if (a.empty() || b.empty())
        throw InvalidParams("mutual_information: label sets must be non-empty");
    std::set<int> ia, ib;
    for (const auto& l : a) ia.insert(g.index_of(l));
    for (const auto& l : b) ib.insert(g.index_of(l));
    for (int i : ia)
        if (ib.count(i)) throw InvalidParams("mutual_information: label sets must be disjoint");

    // Union block in the original dimension order so that I(A;B) == I(B;A)
    // bit for bit.
    Labels joint;
    for (int i = 0; i < g.dim(); ++i)
        if (ia.count(i) || ib.count(i)) joint.push_back(g.labels()[i]);

    const double ld_a = logdet2_checked(g.marginal(a).cov(), "mutual_information");
    const double ld_b = logdet2_checked(g.marginal(b).cov(), "mutual_information");
    const double ld_ab = logdet2_checked(g.marginal(joint).cov(), "mutual_information");
    return std::max(0.0, 0.5 * (ld_a + ld_b - ld_ab));
}

double conditional_mutual_information(const JointGaussian& g, Labels a, Labels b,
                                      const Labels& c) {
    std::set<std::string> cset(c.begin(), c.end());
    auto strip = [&cset](Labels& v) {
        v.erase(std::remove_if(v.begin(), v.end(),
                               [&cset](const std::string& l) { return cset.count(l) > 0; }),
                v.end());
    };
    strip(a);
    strip(b);
    if (a.empty() || b.empty()) return 0.0;
    if (c.empty()) return mutual_information(g, a, b);

    ConditionalLaw law = condition(g, c);
    JointGaussian residual(law.unobserved, law.cond_cov);
    return mutual_information(residual, a, b);
}

} // namespace jscc::gauss
