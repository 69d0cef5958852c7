#ifndef JSCC_GAUSS_HPP
#define JSCC_GAUSS_HPP

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "jscc/errors.hpp"

namespace jscc::gauss {

using Labels = std::vector<std::string>;

/**
 * Zero-mean jointly Gaussian vector with named dimensions.
 *
 * The covariance must be exactly symmetric and positive semidefinite up to
 * a relative tolerance of 1e-10 on the trace.  All downstream decoders
 * (conditional expectations, mutual informations) are exact functions of
 * this object, so it is kept immutable after construction.
 */
class JointGaussian {
  public:
    static constexpr int kMaxDim = 16;

    JointGaussian(Labels labels, Eigen::MatrixXd cov);

    const Labels& labels() const { return labels_; }
    const Eigen::MatrixXd& cov() const { return cov_; }
    int dim() const { return static_cast<int>(labels_.size()); }

    /// Index of a named dimension; throws UnknownLabel if absent.
    int index_of(const std::string& label) const;
    bool has_label(const std::string& label) const;

    double var(const std::string& label) const;
    double cov_of(const std::string& a, const std::string& b) const;

    /// Marginal law of a subset of dimensions, in the order given.
    JointGaussian marginal(const Labels& keep) const;

  private:
    Labels labels_;
    Eigen::MatrixXd cov_;
};

/**
 * Adds one dimension `new_label = sum_i weight_i * old_dim_i + noise`,
 * where the noise is independent with variance `noise_var`.  Keeps the
 * covariance exact by linearity, so assembled channel models stay PSD.
 */
JointGaussian extend(const JointGaussian& g, const std::string& new_label,
                     const std::vector<std::pair<std::string, double>>& weights,
                     double noise_var = 0.0);

/**
 * Conditional law of the unobserved dimensions given the observed ones.
 *
 * mean_map is the (unobserved x observed) matrix M with
 * E[u | o] = M o, and cond_cov = S_uu - S_uo S_oo^{-1} S_ou.
 */
struct ConditionalLaw {
    Labels observed;
    Labels unobserved;
    Eigen::MatrixXd mean_map;
    Eigen::MatrixXd cond_cov;

    double cond_var(const std::string& label) const;
    /// Row of mean_map for one target dimension.
    Eigen::VectorXd coefficients(const std::string& label) const;
};

/// Schur-complement conditioning.  Throws SingularObservation if the
/// observed block is numerically singular, UnknownLabel for bad names.
ConditionalLaw condition(const JointGaussian& g, const Labels& observed);

/// Conditional variance of a single dimension given a set of observations.
double conditional_variance(const JointGaussian& g, const std::string& target,
                            const Labels& observed);

/// Mutual information I(A;B) in bits, A and B disjoint non-empty label sets.
double mutual_information(const JointGaussian& g, const Labels& a, const Labels& b);

/// I(A;B|C) in bits.  Labels shared with C are dropped from A and B first;
/// an empty remainder gives 0.  C may be empty.
double conditional_mutual_information(const JointGaussian& g, Labels a, Labels b,
                                      const Labels& c);

} // namespace jscc::gauss

#endif
