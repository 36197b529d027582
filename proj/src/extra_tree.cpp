#include "gltsnn/extra_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gltsnn {

double population_variance(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (const double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(values.size());
}

double split_gain(std::span<const double> left, std::span<const double> right) {
  std::vector<double> all(left.begin(), left.end());
  all.insert(all.end(), right.begin(), right.end());
  const auto n = static_cast<double>(all.size());
  return population_variance(all) - static_cast<double>(left.size()) / n * population_variance(left) -
         static_cast<double>(right.size()) / n * population_variance(right);
}

namespace {

class ExtraTreeBuilder {
 public:
  ExtraTreeBuilder(const Eigen::Ref<const Eigen::MatrixXd>& X,
                   const Eigen::Ref<const Eigen::VectorXd>& y,
                   std::optional<Eigen::Index> max_depth, SeededRng& rng,
                   std::vector<double>* gains, RegressionTree& tree)
      : X_(X), y_(y), max_depth_(max_depth), rng_(rng), gains_(gains), tree_(tree),
        rows_(static_cast<std::size_t>(X.rows())),
        lo_(static_cast<std::size_t>(X.cols())),
        hi_(static_cast<std::size_t>(X.cols())) {
    for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i] = static_cast<Eigen::Index>(i);
  }

  std::int32_t build(std::size_t begin, std::size_t end, Eigen::Index depth) {
    const auto id = static_cast<std::int32_t>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    const auto n = end - begin;
    const double nd = static_cast<double>(n);

    double sum = 0.0;
    for (std::size_t k = begin; k < end; ++k) sum += y_(rows_[k]);
    const double mean = sum / nd;
    tree_.nodes[static_cast<std::size_t>(id)].value = mean;

    if (n < 2 || (max_depth_ && depth >= *max_depth_) || targets_equal(begin, end) ||
        !any_feature_varies(begin, end)) {
      return id;
    }

    double node_ss = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      const double r = y_(rows_[k]) - mean;
      node_ss += r * r;
    }
    const double node_var = node_ss / nd;

    const auto order = permutation(X_.cols(), rng_);
    double best_gain = -std::numeric_limits<double>::infinity();
    Eigen::Index best_feature = -1;
    double best_threshold = 0.0;
    for (const auto j : order) {
      const double lo = lo_[static_cast<std::size_t>(j)];
      const double hi = hi_[static_cast<std::size_t>(j)];
      if (!(lo < hi)) continue;
      double threshold = lo + rng_.next_unit_f64() * (hi - lo);
      if (threshold >= hi) threshold = std::nextafter(hi, -std::numeric_limits<double>::infinity());
      const double gain = candidate_gain(begin, end, j, threshold, node_var);
      if (gain > best_gain) {
        best_gain = gain;
        best_feature = j;
        best_threshold = threshold;
      }
    }
    if (gains_ != nullptr) gains_->push_back(best_gain);

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
  bool targets_equal(std::size_t begin, std::size_t end) const {
    const double first = y_(rows_[begin]);
    for (std::size_t k = begin + 1; k < end; ++k)
      if (y_(rows_[k]) != first) return false;
    return true;
  }

  // Fills lo_/hi_ for the node; true when some feature is non-constant.
  bool any_feature_varies(std::size_t begin, std::size_t end) {
    bool varies = false;
    for (Eigen::Index j = 0; j < X_.cols(); ++j) {
      double lo = X_(rows_[begin], j);
      double hi = lo;
      for (std::size_t k = begin + 1; k < end; ++k) {
        const double v = X_(rows_[k], j);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      lo_[static_cast<std::size_t>(j)] = lo;
      hi_[static_cast<std::size_t>(j)] = hi;
      varies = varies || lo < hi;
    }
    return varies;
  }

  double candidate_gain(std::size_t begin, std::size_t end, Eigen::Index feature,
                        double threshold, double node_var) const {
    std::size_t n_left = 0;
    double sum_left = 0.0, sum_right = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      const auto r = rows_[k];
      if (X_(r, feature) <= threshold) {
        ++n_left;
        sum_left += y_(r);
      } else {
        sum_right += y_(r);
      }
    }
    const std::size_t n_right = (end - begin) - n_left;
    const double mean_left = sum_left / static_cast<double>(n_left);
    const double mean_right = sum_right / static_cast<double>(n_right);
    double ss_left = 0.0, ss_right = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      const auto r = rows_[k];
      if (X_(r, feature) <= threshold) {
        ss_left += (y_(r) - mean_left) * (y_(r) - mean_left);
      } else {
        ss_right += (y_(r) - mean_right) * (y_(r) - mean_right);
      }
    }
    const double n = static_cast<double>(end - begin);
    const double var_left = ss_left / static_cast<double>(n_left);
    const double var_right = ss_right / static_cast<double>(n_right);
    return node_var - static_cast<double>(n_left) / n * var_left -
           static_cast<double>(n_right) / n * var_right;
  }

  const Eigen::Ref<const Eigen::MatrixXd>& X_;
  const Eigen::Ref<const Eigen::VectorXd>& y_;
  std::optional<Eigen::Index> max_depth_;
  SeededRng& rng_;
  std::vector<double>* gains_;
  RegressionTree& tree_;
  std::vector<Eigen::Index> rows_;
  std::vector<double> lo_, hi_;
};

}  // namespace

ExtraTree fit_extra_tree(const Eigen::Ref<const Eigen::MatrixXd>& X,
                         const Eigen::Ref<const Eigen::VectorXd>& y,
                         std::optional<Eigen::Index> max_depth, SeededRng& rng,
                         std::vector<double>* chosen_gains) {
  if (X.rows() < 1 || X.cols() < 1) throw std::invalid_argument("extra tree: empty input");
  if (y.size() != X.rows())
    throw std::invalid_argument("extra tree: " + std::to_string(X.rows()) + " rows but " +
                                std::to_string(y.size()) + " targets");
  if (!X.allFinite() || !y.allFinite())
    throw std::invalid_argument("extra tree: non-finite input");
  if (max_depth && *max_depth < 0) throw std::invalid_argument("extra tree: negative max_depth");

  ExtraTree tree;
  tree.n_features = X.cols();
  tree.max_depth = max_depth;
  ExtraTreeBuilder builder(X, y, max_depth, rng, chosen_gains, tree);
  builder.build(0, static_cast<std::size_t>(X.rows()), 0);
  return tree;
}

}  // namespace gltsnn
