// gltsnn command-line tool: fit / predict / bench / gen.
//
// Exit codes: 0 success, 1 runtime error, 2 usage error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gltsnn/dataset.hpp"
#include "gltsnn/gltsnn.hpp"
#include "gltsnn/harness.hpp"
#include "gltsnn/model_io.hpp"

namespace {

constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FitArgs {
  std::string data;
  std::string target;
  std::string out;
  std::int64_t seed = 0;
  Eigen::Index folds = 10;
  Eigen::Index num_knn = 100;
  std::optional<Eigen::Index> tree_depth;
  std::size_t threads = 0;
};

struct PredictArgs {
  std::string model;
  std::string data;
  std::string out;
  std::string target;
  std::size_t threads = 0;
};

struct BenchArgs {
  std::uint64_t seed = 0;
  std::string out;
  std::string data_dir;
  std::size_t threads = 0;
};

struct GenArgs {
  std::string kind;
  Eigen::Index n = 1000;
  Eigen::Index d = 10;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_fit(const FitArgs& args) {
  gltsnn::GltsnnConfig config;
  config.random_seed = args.seed;
  config.num_folds = args.folds;
  config.num_knn = args.num_knn;
  config.tree_depth = args.tree_depth;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const auto ds = gltsnn::load_csv(args.data, args.target);
  gltsnn::FitOptions options;
  options.threads = args.threads;
  const auto start = std::chrono::steady_clock::now();
  const auto model = gltsnn::fit(ds, config, options);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  gltsnn::save_model(model, args.out);
  std::printf("fit n=%ld d=%ld seconds=%.3f\n", static_cast<long>(ds.rows()),
              static_cast<long>(ds.cols()), elapsed.count());
  return 0;
}

// Picks the model's feature columns out of `table` by name; falls back to
// positional use when the widths match exactly.
Eigen::MatrixXd select_features(const gltsnn::Dataset& table, const gltsnn::FittedGltsnn& model,
                                const std::string& target) {
  std::vector<Eigen::Index> columns;
  for (const auto& name : model.feature_names) {
    for (std::size_t j = 0; j < table.feature_names.size(); ++j) {
      if (table.feature_names[j] == name) {
        columns.push_back(static_cast<Eigen::Index>(j));
        break;
      }
    }
  }
  if (static_cast<Eigen::Index>(columns.size()) == model.n_features) {
    Eigen::MatrixXd X(table.rows(), model.n_features);
    for (Eigen::Index j = 0; j < model.n_features; ++j)
      X.col(j) = table.features.col(columns[static_cast<std::size_t>(j)]);
    return X;
  }
  Eigen::Index width = table.cols();
  Eigen::MatrixXd X = table.features;
  if (!target.empty()) {
    for (std::size_t j = 0; j < table.feature_names.size(); ++j) {
      if (table.feature_names[j] != target) continue;
      const auto drop = static_cast<Eigen::Index>(j);
      Eigen::MatrixXd reduced(table.rows(), width - 1);
      reduced << X.leftCols(drop), X.rightCols(width - drop - 1);
      X = std::move(reduced);
      width -= 1;
      break;
    }
  }
  if (width != model.n_features)
    throw std::runtime_error("feature count mismatch: model expects d=" +
                             std::to_string(model.n_features) + ", input has d=" +
                             std::to_string(width));
  return X;
}

int run_predict(const PredictArgs& args) {
  const auto model = gltsnn::load_model(args.model);
  const auto table = gltsnn::load_features_csv(args.data);
  const auto X = select_features(table, model, args.target);
  const auto preds = gltsnn::predict(model, X, args.threads);

  std::ofstream out(args.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + args.out + "'");
  out << "prediction\n";
  char buf[32];
  for (Eigen::Index i = 0; i < preds.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", preds(i));
    out << buf << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + args.out + "'");
  return 0;
}

int run_bench(const BenchArgs& args) {
  gltsnn::ExperimentOptions options;
  options.threads = args.threads;
  if (!args.data_dir.empty()) options.data_dir = args.data_dir;
  const auto report = gltsnn::run_experiments(args.seed, options);
  gltsnn::print_report(report, std::cout);
  if (!args.out.empty()) {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + args.out + "'");
    gltsnn::write_report_csv(report, out);
  }
  return 0;
}

int run_gen(const GenArgs& args) {
  if (args.kind != "friedman1") throw UsageError("unknown generator '" + args.kind + "'");
  if (args.d < 5) throw UsageError("friedman1 needs --d >= 5");
  const auto ds = gltsnn::gen_friedman1(args.n, args.d, args.noise, args.seed);
  gltsnn::write_csv(ds, args.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GLTSNN ensemble regression and benchmark tool"};
  app.require_subcommand(1);

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a GLTSNN model on a CSV file");
  fit_cmd->add_option("data", fit_args.data, "Training CSV")->required();
  fit_cmd->add_option("--target", fit_args.target, "Target column name")->required();
  fit_cmd->add_option("--out", fit_args.out, "Model JSON output path")->required();
  fit_cmd->add_option("--seed", fit_args.seed, "Random seed")->capture_default_str();
  fit_cmd->add_option("--folds", fit_args.folds, "Number of time-split folds (>= 2)")
      ->capture_default_str();
  fit_cmd->add_option("--num-knn", fit_args.num_knn, "Number of shuffles / 1NN models (>= 1)")
      ->capture_default_str();
  fit_cmd->add_option("--tree-depth", fit_args.tree_depth, "Maximum tree depth (unset = unlimited)");
  fit_cmd->add_option("--threads", fit_args.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();

  PredictArgs predict_args;
  auto* predict_cmd = app.add_subcommand("predict", "Predict with a saved model");
  predict_cmd->add_option("model", predict_args.model, "Model JSON")->required();
  predict_cmd->add_option("data", predict_args.data, "Input CSV")->required();
  predict_cmd->add_option("--out", predict_args.out, "Predictions CSV output path")->required();
  predict_cmd->add_option("--target", predict_args.target,
                          "Column to ignore when the input also carries the target");
  predict_cmd->add_option("--threads", predict_args.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Run the RF vs GLTSNN OOF MSE benchmark");
  bench_cmd->add_option("--seed", bench_args.seed, "Cross-validation seed")->capture_default_str();
  bench_cmd->add_option("--out", bench_args.out, "Report CSV output path");
  bench_cmd->add_option("--data-dir", bench_args.data_dir, "Directory with boston.csv and diabetes.csv");
  bench_cmd->add_option("--threads", bench_args.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic dataset");
  gen_cmd->add_option("kind", gen_args.kind, "Generator name (friedman1)")->required();
  gen_cmd->add_option("--n", gen_args.n, "Rows")->capture_default_str()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--d", gen_args.d, "Features (>= 5)")->capture_default_str();
  gen_cmd->add_option("--noise", gen_args.noise, "Noise standard deviation")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen_args.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out", gen_args.out, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*fit_cmd) return run_fit(fit_args);
    if (*predict_cmd) return run_predict(predict_args);
    if (*bench_cmd) return run_bench(bench_args);
    if (*gen_cmd) return run_gen(gen_args);
  } catch (const UsageError& e) {
    std::cerr << "gltsnn: usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "gltsnn: error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}
