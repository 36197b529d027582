#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>

#include "doctest.h"
#include "gltsnn/dataset.hpp"
#include "gltsnn/error.hpp"
#include "gltsnn/rng.hpp"

namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name, const std::string& contents) {
  const auto path = fs::temp_directory_path() / ("gltsnn_test_" + name);
  std::ofstream(path) << contents;
  return path;
}

}  // namespace

TEST_CASE("load_csv reads features in header order") {
  const auto path = temp_file("small.csv", "a,y,b\n1,10,2\n3,20,4\n5,30,6.5\n");
  const auto ds = gltsnn::load_csv(path, "y");
  CHECK(ds.rows() == 3);
  CHECK(ds.cols() == 2);
  CHECK(ds.feature_names == std::vector<std::string>{"a", "b"});
  CHECK(ds.features(2, 1) == 6.5);
  CHECK(ds.target(1) == 20.0);
  gltsnn::validate(ds);
}

TEST_CASE("load_csv errors") {
  const auto good = temp_file("good.csv", "a,b\n1,2\n");
  CHECK_THROWS_WITH_AS(gltsnn::load_csv(good, "y"), doctest::Contains("'y'"), gltsnn::DataError);
  CHECK_THROWS_AS(gltsnn::load_csv(fs::temp_directory_path() / "does_not_exist.csv", "y"),
                  gltsnn::DataError);

  const auto dup = temp_file("dup.csv", "y,a,y\n1,2,3\n");
  CHECK_THROWS_WITH_AS(gltsnn::load_csv(dup, "y"), doctest::Contains("twice"), gltsnn::DataError);

  const auto bad = temp_file("bad.csv", "a,y\n1,2\n3,abc\n");
  CHECK_THROWS_WITH_AS(gltsnn::load_csv(bad, "y"), doctest::Contains("line 3, column 'y'"),
                       gltsnn::DataError);

  const auto nan = temp_file("nan.csv", "a,y\nnan,2\n");
  CHECK_THROWS_AS(gltsnn::load_csv(nan, "y"), gltsnn::DataError);

  const auto empty = temp_file("empty.csv", "a,y\n");
  CHECK_THROWS_WITH_AS(gltsnn::load_csv(empty, "y"), doctest::Contains("no data"), gltsnn::DataError);

  const auto ragged = temp_file("ragged.csv", "a,y\n1,2,3\n");
  CHECK_THROWS_AS(gltsnn::load_csv(ragged, "y"), gltsnn::DataError);
}

TEST_CASE("write_csv round trip is value identical") {
  auto ds = gltsnn::gen_friedman1(25, 6, 1.0, 4);
  ds.features(0, 0) = 1.0 / 3.0;
  const auto path = fs::temp_directory_path() / "gltsnn_test_roundtrip.csv";
  gltsnn::write_csv(ds, path);
  const auto back = gltsnn::load_csv(path, "y");
  CHECK(back.feature_names == ds.feature_names);
  CHECK(back.features == ds.features);
  CHECK(back.target == ds.target);
}

TEST_CASE("builtin datasets") {
  const fs::path dir = GLTSNN_TEST_DATA_DIR;
  const auto boston = gltsnn::builtin("boston", dir);
  CHECK(boston.rows() == 506);
  CHECK(boston.cols() == 13);
  CHECK(boston.target_name == "MEDV");
  const auto diabetes = gltsnn::builtin("diabetes", dir);
  CHECK(diabetes.rows() == 442);
  CHECK(diabetes.cols() == 10);
  gltsnn::validate(boston);
  gltsnn::validate(diabetes);
  CHECK_THROWS_AS(gltsnn::builtin("iris", dir), std::invalid_argument);
}

TEST_CASE("friedman1 closed form") {
  Eigen::RowVectorXd x = Eigen::RowVectorXd::Constant(10, 0.5);
  CHECK(gltsnn::friedman1_response(x) ==
        doctest::Approx(10.0 * std::sin(std::numbers::pi / 4.0) + 7.5).epsilon(1e-15));
  CHECK(gltsnn::friedman1_response(x) == doctest::Approx(14.5711).epsilon(1e-5));

  Eigen::RowVectorXd zero(6);
  zero << 0.0, 0.73, 0.5, 0.0, 0.0, 0.9;
  CHECK(gltsnn::friedman1_response(zero) == 0.0);

  CHECK_THROWS_AS(gltsnn::gen_friedman1(10, 4, 0.0, 0), std::invalid_argument);
}

TEST_CASE("friedman1 generation") {
  const auto a = gltsnn::gen_friedman1(1000, 10, 1.0, 0);
  const auto b = gltsnn::gen_friedman1(1000, 10, 1.0, 0);
  CHECK(a.rows() == 1000);
  CHECK(a.cols() == 10);
  CHECK(a.features == b.features);
  CHECK(a.target == b.target);
  CHECK(a.feature_names.front() == "x0");
  CHECK(a.feature_names.back() == "x9");

  // Row-major feature draws come first.
  gltsnn::SeededRng rng(0);
  CHECK(a.features(0, 0) == rng.next_unit_f64());
  CHECK(a.features(0, 1) == rng.next_unit_f64());

  const auto clean = gltsnn::gen_friedman1(300, 7, 0.0, 9);
  for (Eigen::Index i = 0; i < clean.rows(); ++i)
    REQUIRE(std::abs(clean.target(i) - gltsnn::friedman1_response(clean.features.row(i))) <= 1e-12);
  CHECK(clean.features.minCoeff() >= 0.0);
  CHECK(clean.features.maxCoeff() < 1.0);

  // noise = 1: residuals around the closed form are roughly standard normal.
  double sq = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double r = a.target(i) - gltsnn::friedman1_response(a.features.row(i));
    sq += r * r;
  }
  CHECK(sq / 1000.0 == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("apply_permutation") {
  const auto ds = gltsnn::gen_friedman1(40, 5, 0.5, 2);
  std::vector<Eigen::Index> identity(40);
  for (Eigen::Index i = 0; i < 40; ++i) identity[static_cast<std::size_t>(i)] = i;
  const auto same = gltsnn::apply_permutation(ds, identity);
  CHECK(same.features == ds.features);
  CHECK(same.target == ds.target);

  gltsnn::SeededRng rng(5);
  const auto perm = gltsnn::permutation(40, rng);
  std::vector<Eigen::Index> inverse(40);
  for (std::size_t i = 0; i < perm.size(); ++i) inverse[static_cast<std::size_t>(perm[i])] = static_cast<Eigen::Index>(i);
  const auto shuffled = gltsnn::apply_permutation(ds, perm);
  const auto restored = gltsnn::apply_permutation(shuffled, inverse);
  CHECK(restored.features == ds.features);
  CHECK(restored.target == ds.target);

  std::vector<Eigen::Index> bad = perm;
  bad[0] = bad[1];
  CHECK_THROWS_AS(gltsnn::apply_permutation(ds, bad), std::invalid_argument);
  bad.pop_back();
  CHECK_THROWS_AS(gltsnn::apply_permutation(ds, bad), std::invalid_argument);
}

TEST_CASE("apply_permutation keeps rows paired with targets (property)") {
  gltsnn::SeededRng meta(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + meta.next_below(60));
    const auto ds = gltsnn::gen_friedman1(n, 5, 1.0, meta.next_u64());
    gltsnn::SeededRng rng(meta.next_u64());
    const auto perm = gltsnn::permutation(n, rng);
    const auto out = gltsnn::apply_permutation(ds, perm);
    std::multimap<double, double> before, after;
    for (Eigen::Index i = 0; i < n; ++i) {
      before.emplace(ds.features(i, 0), ds.target(i));
      after.emplace(out.features(i, 0), out.target(i));
      const auto src = perm[static_cast<std::size_t>(i)];
      REQUIRE(out.features.row(i) == ds.features.row(src));
      REQUIRE(out.target(i) == ds.target(src));
    }
    REQUIRE(before == after);
  }
}
