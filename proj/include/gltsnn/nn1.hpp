#ifndef GLTSNN_NN1_HPP
#define GLTSNN_NN1_HPP

#include <Eigen/Core>

namespace gltsnn {

/// Exact one-nearest-neighbor regressor. Points are kept row-major so a
/// distance evaluation walks contiguous memory.
struct NN1Model {
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> points;
  Eigen::VectorXd targets;

  Eigen::Index dims() const { return points.cols(); }
  Eigen::Index size() const { return points.rows(); }
};

NN1Model fit_nn1(const Eigen::Ref<const Eigen::MatrixXd>& points,
                 const Eigen::Ref<const Eigen::VectorXd>& targets);

/// Index of the training point nearest to `query` in squared Euclidean
/// distance; the lowest index wins ties.
Eigen::Index nearest_index(const NN1Model& model, const Eigen::Ref<const Eigen::RowVectorXd>& query);

/// Brute-force search for every query row. Throws std::invalid_argument when
/// the query width differs from the model's.
Eigen::VectorXd predict_nn1(const NN1Model& model, const Eigen::Ref<const Eigen::MatrixXd>& queries);

}  // namespace gltsnn

#endif  // GLTSNN_NN1_HPP
