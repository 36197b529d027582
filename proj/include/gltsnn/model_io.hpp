#ifndef GLTSNN_MODEL_IO_HPP
#define GLTSNN_MODEL_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "gltsnn/gltsnn.hpp"

namespace gltsnn {

inline constexpr int kModelSchemaVersion = 1;

/// JSON model document:
///   { "format": "gltsnn-model", "schema_version": 1,
///     "config": {random_seed, tree_depth|null, num_folds, num_knn},
///     "d", "feature_names",
///     "seeds": [ { "trees": [ {n_features, root} ... ],
///                  "nn": {points: [[...]...], targets: [...]} } ... ],
///     "ridge": {coef, intercept, alpha, lambda, feature_means,
///               feature_scales, target_mean, n_iterations_used} }
/// Tree nodes nest as {"leaf": v} or {feature, threshold, left, right}.
/// Numbers are written in shortest round-trip form, so loading reproduces
/// every double bit for bit.
std::string serialize(const FittedGltsnn& model);

/// Throws ModelVersionError for an unknown schema_version and
/// ModelFormatError for anything else that does not decode to a
/// consistent model.
FittedGltsnn deserialize(std::string_view payload);

void save_model(const FittedGltsnn& model, const std::filesystem::path& path);
FittedGltsnn load_model(const std::filesystem::path& path);

}  // namespace gltsnn

#endif  // GLTSNN_MODEL_IO_HPP
