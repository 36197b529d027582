#include "gltsnn/nn1.hpp"

#include <stdexcept>
#include <string>

namespace gltsnn {

namespace {

Eigen::Index nearest(const NN1Model& model, const double* query) {
  const auto k = model.dims();
  const double* row = model.points.data();
  Eigen::Index best = 0;
  double best_d2 = 0.0;
  for (Eigen::Index i = 0; i < model.size(); ++i, row += k) {
    double d2 = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      const double diff = row[j] - query[j];
      d2 += diff * diff;
    }
    if (i == 0 || d2 < best_d2) {
      best = i;
      best_d2 = d2;
    }
  }
  return best;
}

}  // namespace

NN1Model fit_nn1(const Eigen::Ref<const Eigen::MatrixXd>& points,
                 const Eigen::Ref<const Eigen::VectorXd>& targets) {
  if (points.rows() < 1) throw std::invalid_argument("1NN: no training points");
  if (points.rows() != targets.size())
    throw std::invalid_argument("1NN: " + std::to_string(points.rows()) + " points but " +
                                std::to_string(targets.size()) + " targets");
  if (!points.allFinite() || !targets.allFinite())
    throw std::invalid_argument("1NN: non-finite input");
  NN1Model model;
  model.points = points;
  model.targets = targets;
  return model;
}

Eigen::Index nearest_index(const NN1Model& model,
                           const Eigen::Ref<const Eigen::RowVectorXd>& query) {
  if (query.size() != model.dims())
    throw std::invalid_argument("1NN: query has " + std::to_string(query.size()) +
                                " features, model expects " + std::to_string(model.dims()));
  const Eigen::RowVectorXd q = query;
  return nearest(model, q.data());
}

Eigen::VectorXd predict_nn1(const NN1Model& model,
                            const Eigen::Ref<const Eigen::MatrixXd>& queries) {
  if (queries.cols() != model.dims())
    throw std::invalid_argument("1NN: queries have " + std::to_string(queries.cols()) +
                                " features, model expects " + std::to_string(model.dims()));
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> q = queries;
  Eigen::VectorXd out(queries.rows());
  for (Eigen::Index i = 0; i < q.rows(); ++i) out(i) = model.targets(nearest(model, q.row(i).data()));
  return out;
}

}  // namespace gltsnn
