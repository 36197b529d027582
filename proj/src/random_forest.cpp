#include "gltsnn/random_forest.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "gltsnn/parallel.hpp"

namespace gltsnn {

namespace {

class CartBuilder {
 public:
  CartBuilder(const Eigen::Ref<const Eigen::MatrixXd>& X, const Eigen::Ref<const Eigen::VectorXd>& y,
              std::optional<Eigen::Index> max_depth, RegressionTree& tree)
      : X_(X), y_(y), max_depth_(max_depth), tree_(tree), rows_(static_cast<std::size_t>(X.rows())) {
    for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i] = static_cast<Eigen::Index>(i);
  }

  std::int32_t build(std::size_t begin, std::size_t end, Eigen::Index depth) {
    const auto id = static_cast<std::int32_t>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    const auto n = end - begin;

    double sum = 0.0;
    bool pure = true;
    const double first = y_(rows_[begin]);
    for (std::size_t k = begin; k < end; ++k) {
      sum += y_(rows_[k]);
      pure = pure && y_(rows_[k]) == first;
    }
    tree_.nodes[static_cast<std::size_t>(id)].value = sum / static_cast<double>(n);
    if (n < 2 || pure || (max_depth_ && depth >= *max_depth_)) return id;

    // Maximizing S_L^2 / n_L + S_R^2 / n_R is equivalent to maximizing the
    // variance reduction, since Var(node) is fixed at this point.
    double best_score = -std::numeric_limits<double>::infinity();
    Eigen::Index best_feature = -1;
    double best_threshold = 0.0;
    sorted_.resize(n);
    for (Eigen::Index j = 0; j < X_.cols(); ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const auto r = rows_[begin + k];
        sorted_[k] = {X_(r, j), y_(r)};
      }
      std::sort(sorted_.begin(), sorted_.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      if (sorted_.front().first == sorted_.back().first) continue;
      double left_sum = 0.0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        left_sum += sorted_[k].second;
        if (sorted_[k].first == sorted_[k + 1].first) continue;
        const double n_left = static_cast<double>(k + 1);
        const double n_right = static_cast<double>(n - k - 1);
        const double right_sum = sum - left_sum;
        const double score = left_sum * left_sum / n_left + right_sum * right_sum / n_right;
        if (score > best_score) {
          best_score = score;
          best_feature = j;
          best_threshold = 0.5 * (sorted_[k].first + sorted_[k + 1].first);
          if (best_threshold == sorted_[k + 1].first) best_threshold = sorted_[k].first;
        }
      }
    }
    if (best_feature < 0) return id;

    const auto mid = std::stable_partition(
        rows_.begin() + static_cast<std::ptrdiff_t>(begin),
        rows_.begin() + static_cast<std::ptrdiff_t>(end),
        [&](Eigen::Index r) { return X_(r, best_feature) <= best_threshold; });
    const auto split = static_cast<std::size_t>(mid - rows_.begin());
    const auto left = build(begin, split, depth + 1);
    const auto right = build(split, end, depth + 1);
    auto& node = tree_.nodes[static_cast<std::size_t>(id)];
    node.feature = static_cast<std::int32_t>(best_feature);
    node.threshold = best_threshold;
    node.left = left;
    node.right = right;
    node.value = 0.0;
    return id;
  }

 private:
  const Eigen::Ref<const Eigen::MatrixXd>& X_;
  const Eigen::Ref<const Eigen::VectorXd>& y_;
  std::optional<Eigen::Index> max_depth_;
  RegressionTree& tree_;
  std::vector<Eigen::Index> rows_;
  std::vector<std::pair<double, double>> sorted_;
};

void check_inputs(const Eigen::Ref<const Eigen::MatrixXd>& X, const Eigen::Ref<const Eigen::VectorXd>& y,
                  const char* who) {
  if (X.rows() < 1 || X.cols() < 1) throw std::invalid_argument(std::string(who) + ": empty input");
  if (y.size() != X.rows())
    throw std::invalid_argument(std::string(who) + ": " + std::to_string(X.rows()) + " rows but " +
                                std::to_string(y.size()) + " targets");
  if (!X.allFinite() || !y.allFinite())
    throw std::invalid_argument(std::string(who) + ": non-finite input");
}

}  // namespace

RegressionTree fit_cart_tree(const Eigen::Ref<const Eigen::MatrixXd>& X,
                             const Eigen::Ref<const Eigen::VectorXd>& y,
                             std::optional<Eigen::Index> max_depth) {
  check_inputs(X, y, "CART");
  RegressionTree tree;
  tree.n_features = X.cols();
  tree.max_depth = max_depth;
  CartBuilder(X, y, max_depth, tree).build(0, static_cast<std::size_t>(X.rows()), 0);
  return tree;
}

std::vector<Eigen::Index> bootstrap_rows(Eigen::Index n, std::uint64_t seed, std::size_t tree_index) {
  SeededRng rng(derive_seed(seed, {tree_index}));
  std::vector<Eigen::Index> rows(static_cast<std::size_t>(n));
  for (auto& r : rows) r = static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(n)));
  return rows;
}

RandomForest fit_forest(const Eigen::Ref<const Eigen::MatrixXd>& X,
                        const Eigen::Ref<const Eigen::VectorXd>& y, const ForestConfig& config,
                        std::size_t threads) {
  check_inputs(X, y, "random forest");
  if (config.n_trees < 1) throw std::invalid_argument("random forest: n_trees must be >= 1");
  if (config.max_depth && *config.max_depth < 0)
    throw std::invalid_argument("random forest: negative max_depth");

  RandomForest forest;
  forest.n_features = X.cols();
  forest.trees.resize(static_cast<std::size_t>(config.n_trees));
  parallel_for(forest.trees.size(), threads, [&](std::size_t t) {
    if (!config.bootstrap) {
      forest.trees[t] = fit_cart_tree(X, y, config.max_depth);
      return;
    }
    const auto rows = bootstrap_rows(X.rows(), config.seed, t);
    Eigen::MatrixXd Xb(X.rows(), X.cols());
    Eigen::VectorXd yb(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      Xb.row(i) = X.row(rows[static_cast<std::size_t>(i)]);
      yb(i) = y(rows[static_cast<std::size_t>(i)]);
    }
    forest.trees[t] = fit_cart_tree(Xb, yb, config.max_depth);
  });
  return forest;
}

Eigen::VectorXd predict_forest(const RandomForest& forest, const Eigen::Ref<const Eigen::MatrixXd>& X,
                               std::size_t threads) {
  if (X.cols() != forest.n_features)
    throw std::invalid_argument("random forest expects " + std::to_string(forest.n_features) +
                                " features, got " + std::to_string(X.cols()));
  Eigen::MatrixXd per_tree(X.rows(), static_cast<Eigen::Index>(forest.trees.size()));
  parallel_for(forest.trees.size(), threads, [&](std::size_t t) {
    per_tree.col(static_cast<Eigen::Index>(t)) = predict_tree(forest.trees[t], X);
  });
  Eigen::VectorXd out(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index t = 0; t < per_tree.cols(); ++t) sum += per_tree(i, t);
    out(i) = sum / static_cast<double>(per_tree.cols());
  }
  return out;
}

}  // namespace gltsnn
