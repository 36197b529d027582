#ifndef GLTSNN_EXTRA_TREE_HPP
#define GLTSNN_EXTRA_TREE_HPP

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "gltsnn/regression_tree.hpp"
#include "gltsnn/rng.hpp"

namespace gltsnn {

/// Extremely randomized regression tree. Same node layout as any other
/// RegressionTree; only the induction rule differs.
using ExtraTree = RegressionTree;

/// Population variance, mean first then squared deviations.
double population_variance(std::span<const double> values);

/// Variance reduction of splitting a node into `left` and `right`:
///   Var(node) - (n_L / n) Var(L) - (n_R / n) Var(R).
double split_gain(std::span<const double> left, std::span<const double> right);

/// Grows an extra tree on (X, y).
///
/// A node becomes a leaf holding mean(y) when it has fewer than two rows,
/// all its targets are equal, it sits at max_depth, or every feature is
/// constant on it. Otherwise the d features are visited in a fresh random
/// order; each non-constant feature gets one threshold min + u (max - min)
/// with u = rng.next_unit_f64(), and the split with the largest
/// split_gain() wins (earliest visited on ties). Rows with x <= threshold go
/// left. The left subtree is grown before the right one, so the rng stream
/// is consumed in pre-order.
///
/// If `chosen_gains` is non-null, the gain of every accepted split is
/// appended to it in pre-order.
ExtraTree fit_extra_tree(const Eigen::Ref<const Eigen::MatrixXd>& X,
                         const Eigen::Ref<const Eigen::VectorXd>& y,
                         std::optional<Eigen::Index> max_depth, SeededRng& rng,
                         std::vector<double>* chosen_gains = nullptr);

}  // namespace gltsnn

#endif  // GLTSNN_EXTRA_TREE_HPP
