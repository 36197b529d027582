#ifndef GLTSNN_GLTSNN_HPP
#define GLTSNN_GLTSNN_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gltsnn/bayes_ridge.hpp"
#include "gltsnn/dataset.hpp"
#include "gltsnn/extra_tree.hpp"
#include "gltsnn/nn1.hpp"

namespace gltsnn {

struct GltsnnConfig {
  std::int64_t random_seed = 0;
  std::optional<Eigen::Index> tree_depth;
  Eigen::Index num_folds = 10;  ///< F: the cascade has F - 1 trees
  Eigen::Index num_knn = 100;   ///< S: number of shuffles / 1NN models

  /// Throws std::invalid_argument unless F >= 2, S >= 1, tree_depth >= 0.
  void validate() const;
  bool operator==(const GltsnnConfig&) const = default;
};

/// Everything learned from one shuffle of the training data.
struct SeedModel {
  std::vector<ExtraTree> cascade;  ///< tree f reads d + f columns
  NN1Model nn;                     ///< over the F - 1 cascade outputs
};

struct FittedGltsnn {
  GltsnnConfig config;
  Eigen::Index n_features = 0;
  std::vector<std::string> feature_names;
  std::vector<SeedModel> seeds;
  RidgePosterior final;
};

/// Number of leading (pseudo-time ordered) rows used to train the tree of
/// fold f: |{ i : i F < (f + 1) n }|, i.e. ceil((f + 1) n / F).
Eigen::Index time_split(Eigen::Index n, Eigen::Index num_folds, Eigen::Index fold);

/// Seed of the tree grown for shuffle `seed_index` and fold `fold`:
/// derive_seed(random_seed, {seed_index, fold}).
std::uint64_t cascade_tree_seed(std::int64_t random_seed, std::size_t seed_index, std::size_t fold);

/// Row order of shuffle `seed_index`: permutation(n) from
/// SeededRng(random_seed + seed_index), applied to the original row order.
std::vector<Eigen::Index> shuffle_order(std::int64_t random_seed, std::size_t seed_index, Eigen::Index n);

/// Per-shuffle record of what fit() did, for audits and tests.
struct SeedTrace {
  std::vector<Eigen::Index> order;  ///< order[p] = original row at position p
  std::vector<Eigen::Index> train_counts;
  /// Original row ids each fold's tree was trained on / predicted.
  std::vector<std::vector<Eigen::Index>> train_rows;
  std::vector<std::vector<Eigen::Index>> valid_rows;
  Eigen::MatrixXd meta;                ///< n x (F - 1), shuffled order
  Eigen::VectorXd imputation_means;    ///< F - 1
  Eigen::VectorXd nn_outputs;          ///< in-sample 1NN column, shuffled order
};

struct FitTrace {
  std::vector<SeedTrace> seeds;
  Eigen::MatrixXd final_design;  ///< n x S, original row order
};

/// Test hooks. Unset members fall back to shuffle_order / cascade_tree_seed.
struct FitHooks {
  std::function<std::vector<Eigen::Index>(std::size_t seed_index, Eigen::Index n)> order;
  std::function<std::uint64_t(std::size_t seed_index, std::size_t fold)> tree_seed;
};

struct FitOptions {
  std::size_t threads = 0;  ///< 0 = all hardware threads
  FitHooks hooks;
  FitTrace* trace = nullptr;
};

/// Fits the estimator. For each shuffle s the rows are reordered, then for
/// fold f = 0..F-2 a tree is trained on the first time_split(n, F, f) rows
/// using the original features plus the meta columns 0..f-1, and predicts
/// the remaining rows. Those predictions form meta column f; the trained
/// rows receive the mean of the predictions. A 1NN model over the meta
/// columns then predicts its own training rows, and those in-sample outputs
/// (one column per shuffle, original row order) feed a Bayesian ridge.
///
/// Shuffles are independent and run on up to options.threads workers; the
/// result is bitwise identical for any thread count.
FittedGltsnn fit(const Dataset& ds, const GltsnnConfig& config, const FitOptions& options = {});
FittedGltsnn fit(const Eigen::Ref<const Eigen::MatrixXd>& X, const Eigen::Ref<const Eigen::VectorXd>& y,
                 const GltsnnConfig& config, const FitOptions& options = {});

/// Runs every cascade on X (raw tree outputs, no imputation), queries the
/// matching 1NN model, and combines the S outputs with the ridge.
Eigen::VectorXd predict(const FittedGltsnn& model, const Eigen::Ref<const Eigen::MatrixXd>& X,
                        std::size_t threads = 0);

/// The m x S design handed to the ridge by predict().
Eigen::MatrixXd final_design(const FittedGltsnn& model, const Eigen::Ref<const Eigen::MatrixXd>& X,
                             std::size_t threads = 0);

}  // namespace gltsnn

#endif  // GLTSNN_GLTSNN_HPP
