#include "gltsnn/harness.hpp"

#include <chrono>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "gltsnn/gltsnn.hpp"
#include "gltsnn/random_forest.hpp"
#include "gltsnn/rng.hpp"

namespace gltsnn {

std::vector<Eigen::Index> FoldPlan::rows_in(Eigen::Index fold) const {
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < assignments.size(); ++i)
    if (assignments[i] == fold) rows.push_back(static_cast<Eigen::Index>(i));
  return rows;
}

std::vector<Eigen::Index> FoldPlan::rows_outside(Eigen::Index fold) const {
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < assignments.size(); ++i)
    if (assignments[i] != fold) rows.push_back(static_cast<Eigen::Index>(i));
  return rows;
}

FoldPlan kfold(Eigen::Index n, Eigen::Index k, std::uint64_t seed) {
  if (k < 2 || k > n)
    throw std::invalid_argument("kfold: need 2 <= k <= n, got k=" + std::to_string(k) +
                                ", n=" + std::to_string(n));
  SeededRng rng(seed);
  const auto perm = permutation(n, rng);
  FoldPlan plan;
  plan.k = k;
  plan.assignments.assign(static_cast<std::size_t>(n), 0);
  const Eigen::Index base = n / k;
  const Eigen::Index extra = n % k;
  std::size_t pos = 0;
  for (Eigen::Index fold = 0; fold < k; ++fold) {
    const Eigen::Index size = base + (fold < extra ? 1 : 0);
    for (Eigen::Index i = 0; i < size; ++i)
      plan.assignments[static_cast<std::size_t>(perm[pos++])] = fold;
  }
  return plan;
}

namespace {

Dataset take_rows(const Dataset& ds, const std::vector<Eigen::Index>& rows) {
  Dataset out;
  out.feature_names = ds.feature_names;
  out.target_name = ds.target_name;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), ds.cols());
  out.target.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.features.row(static_cast<Eigen::Index>(i)) = ds.features.row(rows[i]);
    out.target(static_cast<Eigen::Index>(i)) = ds.target(rows[i]);
  }
  return out;
}

}  // namespace

Eigen::VectorXd cross_val_predict(const EstimatorSpec& estimator, const Dataset& ds,
                                  const FoldPlan& plan, CvAudit* audit) {
  validate(ds);
  if (static_cast<Eigen::Index>(plan.assignments.size()) != ds.rows())
    throw std::invalid_argument("cross_val_predict: fold plan covers " +
                                std::to_string(plan.assignments.size()) + " rows, dataset has " +
                                std::to_string(ds.rows()));
  for (const auto a : plan.assignments)
    if (a < 0 || a >= plan.k) throw std::invalid_argument("cross_val_predict: bad fold id");

  Eigen::VectorXd oof = Eigen::VectorXd::Constant(ds.rows(), std::numeric_limits<double>::quiet_NaN());
  if (audit != nullptr) {
    audit->train_rows.clear();
    audit->predicted_rows.clear();
  }
  for (Eigen::Index fold = 0; fold < plan.k; ++fold) {
    const auto test = plan.rows_in(fold);
    if (test.empty()) continue;
    const auto train = plan.rows_outside(fold);
    const Dataset train_ds = take_rows(ds, train);
    const Dataset test_ds = take_rows(ds, test);
    Eigen::VectorXd preds;
    try {
      const auto predictor = estimator.train(train_ds.features, train_ds.target);
      preds = predictor(test_ds.features);
    } catch (const std::exception& e) {
      throw std::runtime_error(estimator.name + ", fold " + std::to_string(fold) + ": " + e.what());
    }
    if (preds.size() != static_cast<Eigen::Index>(test.size()))
      throw std::runtime_error(estimator.name + ", fold " + std::to_string(fold) +
                               ": wrong number of predictions");
    for (std::size_t i = 0; i < test.size(); ++i) oof(test[i]) = preds(static_cast<Eigen::Index>(i));
    if (audit != nullptr) {
      audit->train_rows.push_back(train);
      audit->predicted_rows.push_back(test);
    }
  }
  return oof;
}

EstimatorSpec random_forest_estimator(std::uint64_t forest_seed, std::size_t threads) {
  return {"RF", [forest_seed, threads](const Eigen::MatrixXd& X, const Eigen::VectorXd& y) -> Predictor {
            ForestConfig cfg;
            cfg.seed = forest_seed;
            auto forest = fit_forest(X, y, cfg, threads);
            return [forest = std::move(forest), threads](const Eigen::MatrixXd& Xq) {
              return predict_forest(forest, Xq, threads);
            };
          }};
}

EstimatorSpec gltsnn_estimator(std::size_t threads) {
  return {"GLTSNN", [threads](const Eigen::MatrixXd& X, const Eigen::VectorXd& y) -> Predictor {
            FitOptions options;
            options.threads = threads;
            auto model = fit(X, y, GltsnnConfig{}, options);
            return [model = std::move(model), threads](const Eigen::MatrixXd& Xq) {
              return predict(model, Xq, threads);
            };
          }};
}

double ExperimentReport::mse_of(const std::string& estimator, const std::string& dataset) const {
  for (const auto& row : rows)
    if (row.estimator == estimator && row.dataset == dataset) return row.mse;
  throw std::out_of_range("no report row for " + estimator + " / " + dataset);
}

ExperimentReport run_experiments(std::uint64_t seed, const ExperimentOptions& options) {
  const std::vector<std::pair<std::string, Dataset>> datasets = {
      {"boston", builtin("boston", options.data_dir)},
      {"diabetes", builtin("diabetes", options.data_dir)},
      {"friedman1", gen_friedman1(1000, 10, 0.0, 0)},
  };
  const std::vector<EstimatorSpec> estimators = {
      random_forest_estimator(seed, options.threads),
      gltsnn_estimator(options.threads),
  };

  ExperimentReport report;
  for (const auto& estimator : estimators) {
    for (const auto& [name, ds] : datasets) {
      const auto plan = kfold(ds.rows(), 5, seed);
      const auto start = std::chrono::steady_clock::now();
      const auto oof = cross_val_predict(estimator, ds, plan);
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      report.rows.push_back({estimator.name, name, mse(ds.target, oof), elapsed.count(), seed});
    }
  }
  return report;
}

void print_report(const ExperimentReport& report, std::ostream& out) {
  const auto flags = out.flags();
  out << std::left << std::setw(10) << "Estimator" << std::setw(12) << "Dataset" << std::right
      << std::setw(14) << "OOF MSE" << std::setw(11) << "Seconds" << std::setw(7) << "Seed"
      << '\n';
  for (const auto& row : report.rows) {
    out << std::left << std::setw(10) << row.estimator << std::setw(12) << row.dataset
        << std::right << std::fixed << std::setprecision(4) << std::setw(14) << row.mse
        << std::setprecision(2) << std::setw(11) << row.seconds << std::setw(7) << row.seed
        << '\n';
  }
  out.flags(flags);
}

void write_report_csv(const ExperimentReport& report, std::ostream& out) {
  out << "estimator,dataset,mse,seconds,seed\n";
  char buf[64];
  for (const auto& row : report.rows) {
    std::snprintf(buf, sizeof buf, "%.17g", row.mse);
    out << row.estimator << ',' << row.dataset << ',' << buf << ',';
    std::snprintf(buf, sizeof buf, "%.3f", row.seconds);
    out << buf << ',' << row.seed << '\n';
  }
}

}  // namespace gltsnn
