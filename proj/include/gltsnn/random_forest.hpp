#ifndef GLTSNN_RANDOM_FOREST_HPP
#define GLTSNN_RANDOM_FOREST_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "gltsnn/regression_tree.hpp"
#include "gltsnn/rng.hpp"

namespace gltsnn {

struct ForestConfig {
  Eigen::Index n_trees = 100;
  std::optional<Eigen::Index> max_depth;
  std::uint64_t seed = 0;
  /// Sample n rows with replacement per tree. When false every tree sees
  /// the training rows as given.
  bool bootstrap = true;
};

struct RandomForest {
  std::vector<RegressionTree> trees;
  Eigen::Index n_features = 0;
};

/// Exhaustive CART regression tree. At each node every feature is sorted
/// and every midpoint between consecutive distinct values is scored by
/// variance reduction; the best split wins, ties going to the lowest feature
/// index and then the lowest threshold. Nodes that are pure, hold fewer than
/// two rows, reach max_depth, or admit no split become mean leaves.
RegressionTree fit_cart_tree(const Eigen::Ref<const Eigen::MatrixXd>& X,
                             const Eigen::Ref<const Eigen::VectorXd>& y,
                             std::optional<Eigen::Index> max_depth);

/// Row indices drawn with replacement for tree `tree_index`, from
/// SeededRng(derive_seed(seed, {tree_index})).
std::vector<Eigen::Index> bootstrap_rows(Eigen::Index n, std::uint64_t seed, std::size_t tree_index);

RandomForest fit_forest(const Eigen::Ref<const Eigen::MatrixXd>& X,
                        const Eigen::Ref<const Eigen::VectorXd>& y, const ForestConfig& config,
                        std::size_t threads = 0);

/// Arithmetic mean of the per-tree predictions.
Eigen::VectorXd predict_forest(const RandomForest& forest, const Eigen::Ref<const Eigen::MatrixXd>& X,
                               std::size_t threads = 0);

}  // namespace gltsnn

#endif  // GLTSNN_RANDOM_FOREST_HPP
