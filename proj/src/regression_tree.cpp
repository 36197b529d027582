#include "gltsnn/regression_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gltsnn {

Eigen::Index RegressionTree::depth() const {
  if (nodes.empty()) return 0;
  std::vector<Eigen::Index> level(nodes.size(), 0);
  Eigen::Index deepest = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    deepest = std::max(deepest, level[i]);
    if (nodes[i].is_leaf()) continue;
    level[static_cast<std::size_t>(nodes[i].left)] = level[i] + 1;
    level[static_cast<std::size_t>(nodes[i].right)] = level[i] + 1;
  }
  return deepest;
}

Eigen::Index RegressionTree::leaf_count() const {
  return std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.is_leaf(); });
}

Eigen::VectorXd predict_tree(const RegressionTree& tree,
                             const Eigen::Ref<const Eigen::MatrixXd>& X) {
  if (X.cols() != tree.n_features)
    throw std::invalid_argument("tree expects " + std::to_string(tree.n_features) +
                                " features, got " + std::to_string(X.cols()));
  Eigen::VectorXd out(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) out(i) = tree.predict_row(X.row(i));
  return out;
}

void check_tree(const RegressionTree& tree) {
  if (tree.nodes.empty()) throw std::invalid_argument("tree has no nodes");
  const auto count = static_cast<std::int32_t>(tree.nodes.size());
  for (std::int32_t i = 0; i < count; ++i) {
    const auto& node = tree.nodes[static_cast<std::size_t>(i)];
    if (node.is_leaf()) {
      if (!std::isfinite(node.value)) throw std::invalid_argument("non-finite leaf value");
      continue;
    }
    if (node.feature >= tree.n_features)
      throw std::invalid_argument("split feature index out of range");
    if (!std::isfinite(node.threshold)) throw std::invalid_argument("non-finite threshold");
    if (node.left <= i || node.right <= i || node.left >= count || node.right >= count)
      throw std::invalid_argument("child index out of range");
  }
}

}  // namespace gltsnn
