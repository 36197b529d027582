#include "gltsnn/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "gltsnn/error.hpp"
#include "gltsnn/rng.hpp"

namespace gltsnn {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

RawTable read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");

  RawTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (trim(view).empty()) continue;
    const auto cells = split_commas(view);
    if (table.header.empty()) {
      for (auto c : cells) {
        if (c.empty()) throw DataError(path.string() + ": empty column name in header");
        table.header.emplace_back(c);
      }
      table.columns.resize(table.header.size());
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw DataError(path.string() + ": line " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " cells, header has " +
                      std::to_string(table.header.size()));
    }
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const auto cell = cells[j];
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() ||
          !std::isfinite(value)) {
        throw DataError(path.string() + ": line " + std::to_string(line_no) + ", column '" +
                        table.header[j] + "': not a finite number: '" + std::string(cell) +
                        "'");
      }
      table.columns[j].push_back(value);
    }
  }
  if (table.header.empty()) throw DataError(path.string() + ": missing header row");
  if (table.columns.front().empty()) throw DataError(path.string() + ": no data rows");
  return table;
}

Eigen::VectorXd to_vector(const std::vector<double>& column) {
  return Eigen::Map<const Eigen::VectorXd>(column.data(), static_cast<Eigen::Index>(column.size()));
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void validate(const Dataset& ds) {
  if (ds.rows() < 1 || ds.cols() < 1)
    throw std::invalid_argument("dataset must have at least one row and one feature");
  if (ds.target.size() != ds.rows())
    throw std::invalid_argument("target length " + std::to_string(ds.target.size()) +
                                " does not match row count " + std::to_string(ds.rows()));
  if (static_cast<Eigen::Index>(ds.feature_names.size()) != ds.cols())
    throw std::invalid_argument("feature name count does not match column count");
  if (!ds.features.allFinite() || !ds.target.allFinite())
    throw std::invalid_argument("dataset contains non-finite values");
}

Dataset load_csv(const std::filesystem::path& path, const std::string& target_column) {
  auto table = read_table(path);
  std::optional<std::size_t> target_index;
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    if (table.header[j] != target_column) continue;
    if (target_index)
      throw DataError(path.string() + ": target column '" + target_column + "' appears twice");
    target_index = j;
  }
  if (!target_index)
    throw DataError(path.string() + ": target column '" + target_column + "' not found");
  if (table.header.size() < 2) throw DataError(path.string() + ": no feature columns");

  const auto n = static_cast<Eigen::Index>(table.columns.front().size());
  Dataset ds;
  ds.target_name = target_column;
  ds.target = to_vector(table.columns[*target_index]);
  ds.features.resize(n, static_cast<Eigen::Index>(table.header.size() - 1));
  Eigen::Index out = 0;
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    if (j == *target_index) continue;
    ds.feature_names.push_back(table.header[j]);
    ds.features.col(out++) = to_vector(table.columns[j]);
  }
  return ds;
}

Dataset load_features_csv(const std::filesystem::path& path) {
  auto table = read_table(path);
  const auto n = static_cast<Eigen::Index>(table.columns.front().size());
  Dataset ds;
  ds.feature_names = table.header;
  ds.features.resize(n, static_cast<Eigen::Index>(table.header.size()));
  for (std::size_t j = 0; j < table.header.size(); ++j)
    ds.features.col(static_cast<Eigen::Index>(j)) = to_vector(table.columns[j]);
  ds.target = Eigen::VectorXd::Zero(n);
  ds.target_name.clear();
  return ds;
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  for (const auto& name : ds.feature_names) out << name << ',';
  out << ds.target_name << '\n';
  for (Eigen::Index i = 0; i < ds.rows(); ++i) {
    for (Eigen::Index j = 0; j < ds.cols(); ++j) out << format_double(ds.features(i, j)) << ',';
    out << format_double(ds.target(i)) << '\n';
  }
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("GLTSNN_DATA_DIR"); env != nullptr && *env != '\0')
    return env;
  return GLTSNN_DATA_DIR;
}

Dataset builtin(const std::string& name) { return builtin(name, default_data_dir()); }

Dataset builtin(const std::string& name, const std::filesystem::path& data_dir) {
  if (name == "boston") return load_csv(data_dir / "boston.csv", "MEDV");
  if (name == "diabetes") return load_csv(data_dir / "diabetes.csv", "target");
  throw std::invalid_argument("unknown builtin dataset '" + name +
                              "' (expected boston or diabetes)");
}

double friedman1_response(const Eigen::Ref<const Eigen::RowVectorXd>& x) {
  if (x.size() < 5) throw std::invalid_argument("Friedman #1 needs at least 5 features");
  const double a = x(2) - 0.5;
  return 10.0 * std::sin(std::numbers::pi * x(0) * x(1)) + 20.0 * a * a + 10.0 * x(3) +
         5.0 * x(4);
}

Dataset gen_friedman1(Eigen::Index n, Eigen::Index d, double noise, std::uint64_t seed) {
  if (d < 5) throw std::invalid_argument("Friedman #1 needs d >= 5, got " + std::to_string(d));
  if (n < 1) throw std::invalid_argument("Friedman #1 needs n >= 1");
  if (!(noise >= 0.0) || !std::isfinite(noise))
    throw std::invalid_argument("noise must be finite and non-negative");

  SeededRng rng(seed);
  Dataset ds;
  ds.features.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) ds.features(i, j) = rng.next_unit_f64();
  ds.target.resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
    ds.target(i) = friedman1_response(ds.features.row(i)) + noise * rng.standard_normal();
  for (Eigen::Index j = 0; j < d; ++j) ds.feature_names.push_back("x" + std::to_string(j));
  ds.target_name = "y";
  return ds;
}

void check_permutation(std::span<const Eigen::Index> perm, Eigen::Index n) {
  if (static_cast<Eigen::Index>(perm.size()) != n)
    throw std::invalid_argument("permutation has " + std::to_string(perm.size()) +
                                " entries, expected " + std::to_string(n));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto p : perm) {
    if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)])
      throw std::invalid_argument("malformed permutation");
    seen[static_cast<std::size_t>(p)] = true;
  }
}

Dataset apply_permutation(const Dataset& ds, std::span<const Eigen::Index> perm) {
  check_permutation(perm, ds.rows());
  Dataset out;
  out.feature_names = ds.feature_names;
  out.target_name = ds.target_name;
  out.features.resize(ds.rows(), ds.cols());
  out.target.resize(ds.rows());
  for (Eigen::Index i = 0; i < ds.rows(); ++i) {
    out.features.row(i) = ds.features.row(perm[static_cast<std::size_t>(i)]);
    out.target(i) = ds.target(perm[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace gltsnn
