#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "gltsnn/dataset.hpp"
#include "gltsnn/random_forest.hpp"

TEST_CASE("constant target gives constant predictions") {
  const auto ds = gltsnn::gen_friedman1(50, 5, 1.0, 1);
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(50, -2.5);
  gltsnn::ForestConfig cfg;
  cfg.n_trees = 10;
  const auto forest = gltsnn::fit_forest(ds.features, y, cfg, 1);
  for (const auto& tree : forest.trees) CHECK(tree.nodes.size() == 1);
  const auto p = gltsnn::predict_forest(forest, Eigen::MatrixXd::Random(7, 5), 1);
  CHECK((p.array() == -2.5).all());
}

TEST_CASE("single CART split lands on the midpoint") {
  Eigen::MatrixXd X(4, 1);
  X << 0, 1, 2, 3;
  Eigen::VectorXd y(4);
  y << 0, 0, 10, 10;
  gltsnn::ForestConfig cfg;
  cfg.n_trees = 1;
  cfg.bootstrap = false;
  const auto forest = gltsnn::fit_forest(X, y, cfg, 1);
  const auto& tree = forest.trees[0];
  REQUIRE(tree.nodes.size() == 3);
  CHECK(tree.nodes[0].feature == 0);
  CHECK(tree.nodes[0].threshold == 1.5);
  CHECK(tree.nodes[1].value == 0.0);
  CHECK(tree.nodes[2].value == 10.0);
  Eigen::MatrixXd probe(3, 1);
  probe << 1.5, 1.6, -9;
  const Eigen::VectorXd p = gltsnn::predict_forest(forest, probe, 1);
  CHECK(p(0) == 0.0);
  CHECK(p(1) == 10.0);
  CHECK(p(2) == 0.0);
}

TEST_CASE("CART ties go to the lowest feature") {
  // Both columns separate y perfectly with the same score.
  Eigen::MatrixXd X(4, 2);
  X << 0, 5, 1, 6, 2, 7, 3, 8;
  Eigen::VectorXd y(4);
  y << 1, 1, 3, 3;
  const auto tree = gltsnn::fit_cart_tree(X, y, std::nullopt);
  CHECK(tree.nodes[0].feature == 0);
  CHECK(tree.nodes[0].threshold == 1.5);
}

TEST_CASE("unlimited CART interpolates distinct training rows") {
  const auto ds = gltsnn::gen_friedman1(64, 5, 1.0, 4);
  const auto tree = gltsnn::fit_cart_tree(ds.features, ds.target, std::nullopt);
  CHECK(gltsnn::predict_tree(tree, ds.features) == ds.target);
  const auto capped = gltsnn::fit_cart_tree(ds.features, ds.target, 3);
  CHECK(capped.depth() <= 3);
  CHECK(capped.leaf_count() <= 8);
}

TEST_CASE("bootstrap draws n rows with about 63% unique") {
  const Eigen::Index n = 5000;
  const auto rows = gltsnn::bootstrap_rows(n, 7, 3);
  REQUIRE(static_cast<Eigen::Index>(rows.size()) == n);
  CHECK(std::all_of(rows.begin(), rows.end(), [&](auto r) { return r >= 0 && r < n; }));
  const std::set<Eigen::Index> unique(rows.begin(), rows.end());
  const double fraction = static_cast<double>(unique.size()) / static_cast<double>(n);
  CHECK(fraction == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(0.03));
  CHECK(gltsnn::bootstrap_rows(n, 7, 3) == rows);
  CHECK(gltsnn::bootstrap_rows(n, 7, 4) != rows);
  CHECK(gltsnn::bootstrap_rows(n, 8, 3) != rows);
}

TEST_CASE("forest properties") {
  const auto train = gltsnn::gen_friedman1(150, 6, 1.0, 5);
  const auto probe = gltsnn::gen_friedman1(40, 6, 1.0, 6);
  gltsnn::ForestConfig cfg;
  cfg.n_trees = 25;
  cfg.seed = 11;
  const auto forest = gltsnn::fit_forest(train.features, train.target, cfg, 1);
  REQUIRE(forest.trees.size() == 25);
  const Eigen::VectorXd p = gltsnn::predict_forest(forest, probe.features, 1);

  Eigen::VectorXd sum = Eigen::VectorXd::Zero(40);
  for (const auto& tree : forest.trees) sum += gltsnn::predict_tree(tree, probe.features);
  CHECK((p - sum / 25.0).cwiseAbs().maxCoeff() <= 1e-12);

  CHECK(p.minCoeff() >= train.target.minCoeff());
  CHECK(p.maxCoeff() <= train.target.maxCoeff());

  const auto again = gltsnn::fit_forest(train.features, train.target, cfg, 4);
  for (std::size_t t = 0; t < forest.trees.size(); ++t) CHECK(again.trees[t] == forest.trees[t]);
  CHECK(gltsnn::predict_forest(again, probe.features, 3) == p);

  cfg.seed = 12;
  const auto other = gltsnn::fit_forest(train.features, train.target, cfg, 1);
  CHECK(gltsnn::predict_forest(other, probe.features, 1) != p);
}

TEST_CASE("forest errors") {
  const auto ds = gltsnn::gen_friedman1(20, 5, 1.0, 1);
  gltsnn::ForestConfig cfg;
  cfg.n_trees = 2;
  const auto forest = gltsnn::fit_forest(ds.features, ds.target, cfg, 1);
  CHECK_THROWS_AS(gltsnn::predict_forest(forest, Eigen::MatrixXd::Zero(2, 4)), std::invalid_argument);
  cfg.n_trees = 0;
  CHECK_THROWS_AS(gltsnn::fit_forest(ds.features, ds.target, cfg), std::invalid_argument);
  cfg.n_trees = 2;
  CHECK_THROWS_AS(gltsnn::fit_forest(ds.features, ds.target.head(10), cfg), std::invalid_argument);
}
