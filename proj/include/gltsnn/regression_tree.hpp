#ifndef GLTSNN_REGRESSION_TREE_HPP
#define GLTSNN_REGRESSION_TREE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace gltsnn {

/// One node of a binary regression tree. A node with feature < 0 is a leaf
/// carrying `value` (split nodes keep 0); otherwise rows with x[feature] <= threshold go to
/// `left` and the rest to `right` (indices into RegressionTree::nodes).
struct TreeNode {
  std::int32_t feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

/// Flat binary regression tree shared by the extra-tree and CART learners.
/// nodes[0] is the root; children always have larger indices than parents.
struct RegressionTree {
  std::vector<TreeNode> nodes;
  Eigen::Index n_features = 0;
  std::optional<Eigen::Index> max_depth;

  /// Leaf value reached by one feature row (any dense row or column expression).
  template <typename Derived>
  double predict_row(const Eigen::DenseBase<Derived>& x) const {
    std::size_t at = 0;
    while (!nodes[at].is_leaf()) {
      const auto& node = nodes[at];
      at = static_cast<std::size_t>(x(node.feature) <= node.threshold ? node.left : node.right);
    }
    return nodes[at].value;
  }

  Eigen::Index depth() const;
  Eigen::Index leaf_count() const;

  bool operator==(const RegressionTree&) const = default;
};

/// Routes every row of X (m x n_features) to a leaf.
/// Throws std::invalid_argument on a feature-count mismatch.
Eigen::VectorXd predict_tree(const RegressionTree& tree, const Eigen::Ref<const Eigen::MatrixXd>& X);

/// Structural checks used after deserialization: child indices in range and
/// increasing, split features < n_features, finite values.
void check_tree(const RegressionTree& tree);

}  // namespace gltsnn

#endif  // GLTSNN_REGRESSION_TREE_HPP
