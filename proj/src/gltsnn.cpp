#include "gltsnn/gltsnn.hpp"

#include <stdexcept>
#include <string>

#include "gltsnn/parallel.hpp"
#include "gltsnn/rng.hpp"

namespace gltsnn {

void GltsnnConfig::validate() const {
  if (num_folds < 2)
    throw std::invalid_argument("num_folds must be >= 2, got " + std::to_string(num_folds));
  if (num_knn < 1) throw std::invalid_argument("num_knn must be >= 1, got " + std::to_string(num_knn));
  if (tree_depth && *tree_depth < 0)
    throw std::invalid_argument("tree_depth must be non-negative");
}

Eigen::Index time_split(Eigen::Index n, Eigen::Index num_folds, Eigen::Index fold) {
  if (num_folds < 2) throw std::invalid_argument("time_split: num_folds must be >= 2");
  if (fold < 0 || fold > num_folds - 2)
    throw std::invalid_argument("time_split: fold " + std::to_string(fold) + " outside 0.." +
                                std::to_string(num_folds - 2));
  if (n < 0) throw std::invalid_argument("time_split: negative row count");
  return ((fold + 1) * n + num_folds - 1) / num_folds;
}

std::uint64_t cascade_tree_seed(std::int64_t random_seed, std::size_t seed_index, std::size_t fold) {
  return derive_seed(static_cast<std::uint64_t>(random_seed), {seed_index, fold});
}

std::vector<Eigen::Index> shuffle_order(std::int64_t random_seed, std::size_t seed_index, Eigen::Index n) {
  SeededRng rng(static_cast<std::uint64_t>(random_seed) + seed_index);
  return permutation(n, rng);
}

FittedGltsnn fit(const Dataset& ds, const GltsnnConfig& config, const FitOptions& options) {
  validate(ds);
  auto model = fit(ds.features, ds.target, config, options);
  model.feature_names = ds.feature_names;
  return model;
}

FittedGltsnn fit(const Eigen::Ref<const Eigen::MatrixXd>& X, const Eigen::Ref<const Eigen::VectorXd>& y,
                 const GltsnnConfig& config, const FitOptions& options) {
  config.validate();
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  const Eigen::Index F = config.num_folds;
  const Eigen::Index n_meta = F - 1;
  const auto S = static_cast<std::size_t>(config.num_knn);
  if (d < 1) throw std::invalid_argument("fit: no features");
  if (y.size() != n)
    throw std::invalid_argument("fit: " + std::to_string(n) + " rows but " +
                                std::to_string(y.size()) + " targets");
  if (n < F)
    throw std::invalid_argument("fit: need at least num_folds = " + std::to_string(F) +
                                " rows, got " + std::to_string(n));
  if (!X.allFinite() || !y.allFinite()) throw std::invalid_argument("fit: non-finite input");

  FittedGltsnn model;
  model.config = config;
  model.n_features = d;
  for (Eigen::Index j = 0; j < d; ++j) model.feature_names.push_back("x" + std::to_string(j));
  model.seeds.resize(S);

  Eigen::MatrixXd design(n, static_cast<Eigen::Index>(S));
  if (options.trace != nullptr) options.trace->seeds.assign(S, SeedTrace{});

  parallel_for(S, options.threads, [&](std::size_t s) {
    auto order = options.hooks.order ? options.hooks.order(s, n)
                                     : shuffle_order(config.random_seed, s, n);
    check_permutation(order, n);

    // Columns 0..d-1 hold the shuffled features, d..d+F-2 the meta columns.
    Eigen::MatrixXd work(n, d + n_meta);
    Eigen::VectorXd target(n);
    for (Eigen::Index p = 0; p < n; ++p) {
      work.row(p).head(d) = X.row(order[static_cast<std::size_t>(p)]);
      target(p) = y(order[static_cast<std::size_t>(p)]);
    }

    SeedModel& seed_model = model.seeds[s];
    seed_model.cascade.reserve(static_cast<std::size_t>(n_meta));
    Eigen::VectorXd means(n_meta);
    std::vector<Eigen::Index> train_counts;
    for (Eigen::Index f = 0; f < n_meta; ++f) {
      const Eigen::Index t = time_split(n, F, f);
      const auto fold = static_cast<std::size_t>(f);
      SeededRng rng(options.hooks.tree_seed ? options.hooks.tree_seed(s, fold)
                                            : cascade_tree_seed(config.random_seed, s, fold));
      auto tree = fit_extra_tree(work.topLeftCorner(t, d + f), target.head(t), config.tree_depth, rng);
      const Eigen::VectorXd preds = predict_tree(tree, work.block(t, 0, n - t, d + f));
      double sum = 0.0;
      for (Eigen::Index i = 0; i < preds.size(); ++i) sum += preds(i);
      means(f) = sum / static_cast<double>(preds.size());
      work.col(d + f).head(t).setConstant(means(f));
      work.col(d + f).tail(n - t) = preds;
      seed_model.cascade.push_back(std::move(tree));
      train_counts.push_back(t);
    }

    const auto meta = work.rightCols(n_meta);
    seed_model.nn = fit_nn1(meta, target);
    const Eigen::VectorXd in_sample = predict_nn1(seed_model.nn, meta);
    for (Eigen::Index p = 0; p < n; ++p)
      design(order[static_cast<std::size_t>(p)], static_cast<Eigen::Index>(s)) = in_sample(p);

    if (options.trace != nullptr) {
      SeedTrace& tr = options.trace->seeds[s];
      for (const auto t : train_counts) {
        tr.train_rows.emplace_back(order.begin(), order.begin() + t);
        tr.valid_rows.emplace_back(order.begin() + t, order.end());
      }
      tr.order = std::move(order);
      tr.train_counts = std::move(train_counts);
      tr.meta = meta;
      tr.imputation_means = means;
      tr.nn_outputs = in_sample;
    }
  });

  model.final = fit_bayes_ridge(design, y);
  if (options.trace != nullptr) options.trace->final_design = std::move(design);
  return model;
}

Eigen::MatrixXd final_design(const FittedGltsnn& model, const Eigen::Ref<const Eigen::MatrixXd>& X,
                             std::size_t threads) {
  const Eigen::Index d = model.n_features;
  if (X.cols() != d)
    throw std::invalid_argument("predict: model expects " + std::to_string(d) +
                                " features, got " + std::to_string(X.cols()));
  if (!X.allFinite()) throw std::invalid_argument("predict: non-finite input");
  const Eigen::Index m = X.rows();
  const Eigen::Index n_meta = model.config.num_folds - 1;
  Eigen::MatrixXd design(m, static_cast<Eigen::Index>(model.seeds.size()));
  if (m == 0) return design;

  parallel_for(model.seeds.size(), threads, [&](std::size_t s) {
    const SeedModel& seed_model = model.seeds[s];
    Eigen::MatrixXd work(m, d + n_meta);
    work.leftCols(d) = X;
    for (Eigen::Index f = 0; f < n_meta; ++f) {
      work.col(d + f) =
          predict_tree(seed_model.cascade[static_cast<std::size_t>(f)], work.leftCols(d + f));
    }
    design.col(static_cast<Eigen::Index>(s)) = predict_nn1(seed_model.nn, work.rightCols(n_meta));
  });
  return design;
}

Eigen::VectorXd predict(const FittedGltsnn& model, const Eigen::Ref<const Eigen::MatrixXd>& X,
                        std::size_t threads) {
  return predict_ridge(model.final, final_design(model, X, threads));
}

}  // namespace gltsnn
