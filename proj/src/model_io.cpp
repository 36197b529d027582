#include "gltsnn/model_io.hpp"

#include <fstream>
#include <sstream>

#include "gltsnn/error.hpp"
#include "json.hpp"

namespace gltsnn {

using nlohmann::json;

namespace {

json node_to_json(const RegressionTree& tree, std::size_t at) {
  const auto& node = tree.nodes[at];
  if (node.is_leaf()) return json{{"leaf", node.value}};
  return json{{"feature", node.feature},
              {"threshold", node.threshold},
              {"left", node_to_json(tree, static_cast<std::size_t>(node.left))},
              {"right", node_to_json(tree, static_cast<std::size_t>(node.right))}};
}

std::int32_t node_from_json(const json& j, RegressionTree& tree, int depth) {
  if (depth > 20000) throw ModelFormatError("tree nesting too deep");
  if (!j.is_object()) throw ModelFormatError("tree node is not an object");
  const auto id = static_cast<std::int32_t>(tree.nodes.size());
  tree.nodes.emplace_back();
  if (j.contains("leaf")) {
    tree.nodes.back().value = j.at("leaf").get<double>();
    return id;
  }
  const auto feature = j.at("feature").get<std::int32_t>();
  const auto threshold = j.at("threshold").get<double>();
  if (feature < 0) throw ModelFormatError("negative split feature");
  const auto left = node_from_json(j.at("left"), tree, depth + 1);
  const auto right = node_from_json(j.at("right"), tree, depth + 1);
  auto& node = tree.nodes[static_cast<std::size_t>(id)];
  node.feature = feature;
  node.threshold = threshold;
  node.left = left;
  node.right = right;
  return id;
}

json vector_to_json(const Eigen::VectorXd& v) { return std::vector<double>(v.begin(), v.end()); }

Eigen::VectorXd vector_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

json model_to_json(const FittedGltsnn& model) {
  json config{{"random_seed", model.config.random_seed},
              {"tree_depth", nullptr},
              {"num_folds", model.config.num_folds},
              {"num_knn", model.config.num_knn}};
  if (model.config.tree_depth) config["tree_depth"] = *model.config.tree_depth;

  json seeds = json::array();
  for (const auto& seed : model.seeds) {
    json trees = json::array();
    for (const auto& tree : seed.cascade)
      trees.push_back(json{{"n_features", tree.n_features}, {"root", node_to_json(tree, 0)}});
    json points = json::array();
    for (Eigen::Index i = 0; i < seed.nn.points.rows(); ++i) {
      const auto row = seed.nn.points.row(i);
      points.push_back(std::vector<double>(row.begin(), row.end()));
    }
    seeds.push_back(json{{"trees", std::move(trees)},
                         {"nn", json{{"points", std::move(points)},
                                     {"targets", vector_to_json(seed.nn.targets)}}}});
  }

  const auto& r = model.final;
  json ridge{{"coef", vector_to_json(r.coef)},
             {"intercept", r.intercept},
             {"alpha", r.alpha},
             {"lambda", r.lambda},
             {"feature_means", vector_to_json(r.feature_means)},
             {"feature_scales", vector_to_json(r.feature_scales)},
             {"target_mean", r.target_mean},
             {"n_iterations_used", r.n_iterations_used}};

  return json{{"format", "gltsnn-model"},
              {"schema_version", kModelSchemaVersion},
              {"config", std::move(config)},
              {"d", model.n_features},
              {"feature_names", model.feature_names},
              {"seeds", std::move(seeds)},
              {"ridge", std::move(ridge)}};
}

void check_consistent(const FittedGltsnn& model) {
  const auto& cfg = model.config;
  const Eigen::Index d = model.n_features;
  const Eigen::Index n_meta = cfg.num_folds - 1;
  if (d < 1) throw ModelFormatError("d must be positive");
  if (static_cast<Eigen::Index>(model.feature_names.size()) != d)
    throw ModelFormatError("feature_names length differs from d");
  if (static_cast<Eigen::Index>(model.seeds.size()) != cfg.num_knn)
    throw ModelFormatError("expected " + std::to_string(cfg.num_knn) + " seed blocks, found " +
                           std::to_string(model.seeds.size()));
  for (const auto& seed : model.seeds) {
    if (static_cast<Eigen::Index>(seed.cascade.size()) != n_meta)
      throw ModelFormatError("cascade length differs from num_folds - 1");
    for (std::size_t f = 0; f < seed.cascade.size(); ++f) {
      if (seed.cascade[f].n_features != d + static_cast<Eigen::Index>(f))
        throw ModelFormatError("cascade tree " + std::to_string(f) + " has wrong input width");
      check_tree(seed.cascade[f]);
    }
    if (seed.nn.points.rows() < 1 || seed.nn.points.cols() != n_meta ||
        seed.nn.targets.size() != seed.nn.points.rows())
      throw ModelFormatError("1NN block has inconsistent shape");
  }
  const auto S = cfg.num_knn;
  const auto& r = model.final;
  if (r.coef.size() != S || r.feature_means.size() != S || r.feature_scales.size() != S)
    throw ModelFormatError("ridge block width differs from num_knn");
}

FittedGltsnn model_from_json(const json& doc) {
  if (!doc.is_object()) throw ModelFormatError("model document is not a JSON object");
  if (!doc.contains("schema_version") || !doc.at("schema_version").is_number_integer())
    throw ModelFormatError("missing schema_version");
  const auto version = doc.at("schema_version").get<int>();
  if (version != kModelSchemaVersion)
    throw ModelVersionError("unsupported model schema_version " + std::to_string(version) +
                            " (this build reads version " + std::to_string(kModelSchemaVersion) +
                            ")");
  if (doc.value("format", std::string{}) != "gltsnn-model")
    throw ModelFormatError("not a gltsnn model document");

  FittedGltsnn model;
  const auto& cfg = doc.at("config");
  model.config.random_seed = cfg.at("random_seed").get<std::int64_t>();
  if (!cfg.at("tree_depth").is_null()) model.config.tree_depth = cfg.at("tree_depth").get<Eigen::Index>();
  model.config.num_folds = cfg.at("num_folds").get<Eigen::Index>();
  model.config.num_knn = cfg.at("num_knn").get<Eigen::Index>();
  try {
    model.config.validate();
  } catch (const std::invalid_argument& e) {
    throw ModelFormatError(std::string("bad config: ") + e.what());
  }
  model.n_features = doc.at("d").get<Eigen::Index>();
  model.feature_names = doc.at("feature_names").get<std::vector<std::string>>();

  for (const auto& block : doc.at("seeds")) {
    SeedModel seed;
    for (const auto& t : block.at("trees")) {
      RegressionTree tree;
      tree.n_features = t.at("n_features").get<Eigen::Index>();
      tree.max_depth = model.config.tree_depth;
      node_from_json(t.at("root"), tree, 0);
      seed.cascade.push_back(std::move(tree));
    }
    const auto& nn = block.at("nn");
    const auto& points = nn.at("points");
    const auto rows = static_cast<Eigen::Index>(points.size());
    const Eigen::Index cols = model.config.num_folds - 1;
    seed.nn.points.resize(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const auto row = points.at(static_cast<std::size_t>(i)).get<std::vector<double>>();
      if (static_cast<Eigen::Index>(row.size()) != cols)
        throw ModelFormatError("1NN point has wrong width");
      for (Eigen::Index j = 0; j < cols; ++j) seed.nn.points(i, j) = row[static_cast<std::size_t>(j)];
    }
    seed.nn.targets = vector_from_json(nn.at("targets"));
    model.seeds.push_back(std::move(seed));
  }

  const auto& r = doc.at("ridge");
  model.final.coef = vector_from_json(r.at("coef"));
  model.final.intercept = r.at("intercept").get<double>();
  model.final.alpha = r.at("alpha").get<double>();
  model.final.lambda = r.at("lambda").get<double>();
  model.final.feature_means = vector_from_json(r.at("feature_means"));
  model.final.feature_scales = vector_from_json(r.at("feature_scales"));
  model.final.target_mean = r.at("target_mean").get<double>();
  model.final.n_iterations_used = r.at("n_iterations_used").get<int>();

  try {
    check_consistent(model);
  } catch (const std::invalid_argument& e) {
    throw ModelFormatError(e.what());
  }
  return model;
}

}  // namespace

std::string serialize(const FittedGltsnn& model) { return model_to_json(model).dump(); }

FittedGltsnn deserialize(std::string_view payload) {
  json doc;
  try {
    doc = json::parse(payload.begin(), payload.end());
  } catch (const json::parse_error& e) {
    throw ModelFormatError(std::string("malformed model payload: ") + e.what());
  }
  try {
    return model_from_json(doc);
  } catch (const json::exception& e) {
    throw ModelFormatError(std::string("malformed model payload: ") + e.what());
  }
}

void save_model(const FittedGltsnn& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model to '" + path.string() + "'");
  out << serialize(model) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

FittedGltsnn load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return deserialize(buffer.str());
}

}  // namespace gltsnn
