#ifndef GLTSNN_HARNESS_HPP
#define GLTSNN_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gltsnn/dataset.hpp"

namespace gltsnn {

struct FoldPlan {
  Eigen::Index k = 0;
  std::vector<Eigen::Index> assignments;  ///< fold id of each row

  /// Rows of fold j in ascending order.
  std::vector<Eigen::Index> rows_in(Eigen::Index fold) const;
  std::vector<Eigen::Index> rows_outside(Eigen::Index fold) const;
};

/// Shuffled k-fold split: permutation(n) from SeededRng(seed) is cut into k
/// consecutive runs, the first n mod k of which get one extra row.
FoldPlan kfold(Eigen::Index n, Eigen::Index k, std::uint64_t seed);

using Predictor = std::function<Eigen::VectorXd(const Eigen::MatrixXd&)>;
using Trainer = std::function<Predictor(const Eigen::MatrixXd&, const Eigen::VectorXd&)>;

/// A named way of turning training data into a predictor.
struct EstimatorSpec {
  std::string name;
  Trainer train;
};

/// Optional record of which original rows trained each fold's model.
struct CvAudit {
  std::vector<std::vector<Eigen::Index>> train_rows;
  std::vector<std::vector<Eigen::Index>> predicted_rows;
};

/// Out-of-fold predictions: for each fold a fresh model is trained on the
/// other folds and predicts this one. Failures are rethrown as
/// std::runtime_error naming the fold.
Eigen::VectorXd cross_val_predict(const EstimatorSpec& estimator, const Dataset& ds,
                                  const FoldPlan& plan, CvAudit* audit = nullptr);

/// Mean squared error.
template <typename A, typename B>
double mse(const Eigen::MatrixBase<A>& y_true, const Eigen::MatrixBase<B>& y_pred) {
  if (y_true.size() != y_pred.size())
    throw std::invalid_argument("mse: length mismatch (" + std::to_string(y_true.size()) + " vs " +
                                std::to_string(y_pred.size()) + ")");
  if (y_true.size() < 1) throw std::invalid_argument("mse: empty input");
  return (y_true - y_pred).squaredNorm() / static_cast<double>(y_true.size());
}

/// Estimators compared by the benchmark. RF uses `forest_seed` for its
/// bootstrap streams; GLTSNN always runs with its default configuration.
EstimatorSpec random_forest_estimator(std::uint64_t forest_seed, std::size_t threads);
EstimatorSpec gltsnn_estimator(std::size_t threads);

struct ReportRow {
  std::string estimator;
  std::string dataset;
  double mse = 0.0;
  double seconds = 0.0;
  std::uint64_t seed = 0;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;

  /// MSE for (estimator, dataset); throws std::out_of_range if absent.
  double mse_of(const std::string& estimator, const std::string& dataset) const;
};

struct ExperimentOptions {
  std::size_t threads = 0;
  std::filesystem::path data_dir = default_data_dir();
};

/// The benchmark table: {RF, GLTSNN} x {boston, diabetes, friedman1}, each
/// scored by 5-fold kfold(n, 5, seed) OOF MSE. friedman1 is
/// gen_friedman1(1000, 10, 0.0, 0) regardless of `seed` (noise-free, like the
/// reference generator's default). Rows come out in
/// that fixed order.
ExperimentReport run_experiments(std::uint64_t seed, const ExperimentOptions& options = {});

/// Aligned text table.
void print_report(const ExperimentReport& report, std::ostream& out);

/// CSV with header estimator,dataset,mse,seconds,seed.
void write_report_csv(const ExperimentReport& report, std::ostream& out);

}  // namespace gltsnn

#endif  // GLTSNN_HARNESS_HPP
