#ifndef GLTSNN_BAYES_RIDGE_HPP
#define GLTSNN_BAYES_RIDGE_HPP

#include <Eigen/Core>

namespace gltsnn {

/// Fitted Bayesian ridge model. `coef` and `intercept` are on the original
/// feature scale; the normalization statistics are kept for inspection and
/// persistence.
struct RidgePosterior {
  Eigen::VectorXd coef;
  double intercept = 0.0;
  double alpha = 1.0;   ///< noise precision
  double lambda = 1.0;  ///< weight precision
  Eigen::VectorXd feature_means;
  Eigen::VectorXd feature_scales;
  double target_mean = 0.0;
  int n_iterations_used = 0;
};

struct BayesRidgeOptions {
  int max_iterations = 300;
  double tolerance = 1e-3;
  double alpha_1 = 1e-6;
  double alpha_2 = 1e-6;
  double lambda_1 = 1e-6;
  double lambda_2 = 1e-6;
};

/// Evidence-maximizing ridge regression.
///
/// Columns are centered and divided by the Euclidean norm of the centered
/// column (scale 1 for an all-constant column); y is centered. The
/// normalized design is factored once by SVD, after which each iteration
/// solves the ridge system in closed form,
///   w = V diag(s / (s^2 + lambda / alpha)) U^T y_c,
/// and re-estimates the precisions from the effective degrees of freedom
///   gamma = sum alpha s^2 / (lambda + alpha s^2)
///   lambda <- (gamma + 2 l1) / (w^T w + 2 l2)
///   alpha  <- (n - gamma + 2 a1) / (|y_c - X w|^2 + 2 a2).
/// Iteration stops once the L1 change of w drops below the tolerance
/// (checked from the second iteration on); w is then recomputed with the
/// final precisions.
RidgePosterior fit_bayes_ridge(const Eigen::Ref<const Eigen::MatrixXd>& X,
                               const Eigen::Ref<const Eigen::VectorXd>& y,
                               const BayesRidgeOptions& options = {});

/// X * coef + intercept.
Eigen::VectorXd predict_ridge(const RidgePosterior& model, const Eigen::Ref<const Eigen::MatrixXd>& X);

}  // namespace gltsnn

#endif  // GLTSNN_BAYES_RIDGE_HPP
