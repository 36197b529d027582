#ifndef GLTSNN_DATASET_HPP
#define GLTSNN_DATASET_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace gltsnn {

/// Column-named regression data: n rows of d finite features plus a target.
/// Column order is significant; trees address features by index.
struct Dataset {
  std::vector<std::string> feature_names;
  std::string target_name = "y";
  Eigen::MatrixXd features;
  Eigen::VectorXd target;

  Eigen::Index rows() const { return features.rows(); }
  Eigen::Index cols() const { return features.cols(); }
};

/// Throws std::invalid_argument unless the Dataset invariants hold
/// (n >= 1, d >= 1, consistent shapes, all values finite, one name per column).
void validate(const Dataset& ds);

/// Reads a comma-separated file with a header row. Every column other than
/// `target_column` becomes a feature, in header order.
Dataset load_csv(const std::filesystem::path& path, const std::string& target_column);

/// Reads a header-only feature table (no target); used for prediction input.
Dataset load_features_csv(const std::filesystem::path& path);

/// Writes features in order followed by the target column. Values are
/// printed with enough digits to read back bit-exactly.
void write_csv(const Dataset& ds, const std::filesystem::path& path);

/// Directory holding the packaged CSVs. Defaults to the source tree's data/;
/// the GLTSNN_DATA_DIR environment variable overrides it.
std::filesystem::path default_data_dir();

/// Packaged benchmark data: "boston" (506 x 13, target MEDV) or
/// "diabetes" (442 x 10, target "target").
Dataset builtin(const std::string& name);
Dataset builtin(const std::string& name, const std::filesystem::path& data_dir);

/// Friedman #1 regression problem:
///   y = 10 sin(pi x1 x2) + 20 (x3 - 0.5)^2 + 10 x4 + 5 x5 + noise * eps
/// Features are drawn row by row (all d features of row 0, then row 1, ...)
/// and the n noise variates are drawn after every feature.
Dataset gen_friedman1(Eigen::Index n, Eigen::Index d, double noise, std::uint64_t seed);

/// Noise-free Friedman #1 response for one feature row (d >= 5).
double friedman1_response(const Eigen::Ref<const Eigen::RowVectorXd>& x);

/// Row i of the result is row perm[i] of `ds`.
Dataset apply_permutation(const Dataset& ds, std::span<const Eigen::Index> perm);

/// Throws std::invalid_argument unless `perm` is a permutation of 0..n-1.
void check_permutation(std::span<const Eigen::Index> perm, Eigen::Index n);

}  // namespace gltsnn

#endif  // GLTSNN_DATASET_HPP
