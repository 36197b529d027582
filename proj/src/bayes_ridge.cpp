#include "gltsnn/bayes_ridge.hpp"

#include <stdexcept>
#include <string>

#include <Eigen/SVD>

namespace gltsnn {

RidgePosterior fit_bayes_ridge(const Eigen::Ref<const Eigen::MatrixXd>& X,
                               const Eigen::Ref<const Eigen::VectorXd>& y,
                               const BayesRidgeOptions& options) {
  const Eigen::Index n = X.rows();
  const Eigen::Index k = X.cols();
  if (n < 1 || k < 1) throw std::invalid_argument("bayes ridge: empty design");
  if (y.size() != n)
    throw std::invalid_argument("bayes ridge: " + std::to_string(n) + " rows but " +
                                std::to_string(y.size()) + " targets");
  if (!X.allFinite() || !y.allFinite()) throw std::invalid_argument("bayes ridge: non-finite input");

  RidgePosterior post;
  post.feature_means = X.colwise().mean().transpose();
  Eigen::MatrixXd Xn = X.rowwise() - post.feature_means.transpose();
  post.feature_scales = Xn.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < k; ++j)
    if (post.feature_scales(j) == 0.0) post.feature_scales(j) = 1.0;
  Xn.array().rowwise() /= post.feature_scales.transpose().array();

  post.target_mean = y.mean();
  const Eigen::VectorXd yc = y.array() - post.target_mean;

  Eigen::BDCSVD<Eigen::MatrixXd> svd(Xn, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd s = svd.singularValues();
  const Eigen::ArrayXd s2 = s.array().square();
  const Eigen::VectorXd uty = svd.matrixU().transpose() * yc;
  const Eigen::MatrixXd& V = svd.matrixV();

  auto solve = [&](double alpha, double lambda) -> Eigen::VectorXd {
    const Eigen::VectorXd shrink = (s.array() / (s2 + lambda / alpha)).matrix();
    return V * shrink.cwiseProduct(uty);
  };

  const double var_y = yc.squaredNorm() / static_cast<double>(n);
  double alpha = var_y > 0.0 ? 1.0 / var_y : 1.0;
  double lambda = 1.0;
  const double nd = static_cast<double>(n);

  Eigen::VectorXd w_prev;
  int iterations = 0;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const Eigen::VectorXd w = solve(alpha, lambda);
    const double rss = (yc - Xn * w).squaredNorm();
    const double gamma = (alpha * s2 / (lambda + alpha * s2)).sum();
    lambda = (gamma + 2.0 * options.lambda_1) / (w.squaredNorm() + 2.0 * options.lambda_2);
    alpha = (nd - gamma + 2.0 * options.alpha_1) / (rss + 2.0 * options.alpha_2);
    iterations = iter + 1;
    if (iter != 0 && (w - w_prev).lpNorm<1>() < options.tolerance) break;
    w_prev = w;
  }

  const Eigen::VectorXd w = solve(alpha, lambda);
  post.alpha = alpha;
  post.lambda = lambda;
  post.n_iterations_used = iterations;
  post.coef = w.cwiseQuotient(post.feature_scales);
  post.intercept = post.target_mean - post.coef.dot(post.feature_means);
  return post;
}

Eigen::VectorXd predict_ridge(const RidgePosterior& model,
                              const Eigen::Ref<const Eigen::MatrixXd>& X) {
  if (X.cols() != model.coef.size())
    throw std::invalid_argument("ridge: input has " + std::to_string(X.cols()) +
                                " columns, model expects " + std::to_string(model.coef.size()));
  return (X * model.coef).array() + model.intercept;
}

}  // namespace gltsnn
