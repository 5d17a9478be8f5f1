#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "colscale/features.hpp"
#include "colscale/stats.hpp"

namespace col {

inline constexpr int kModelVersion = 1;
inline constexpr std::string_view kModelFormat = "colscale-model";

struct ReferenceEntry {
  std::string doc_id;
  ColClass label = ColClass::literacy;
  std::optional<std::string> category;
  std::array<double, kFeatureCount> raw{};
  double col_score = 0.0;

  bool operator==(const ReferenceEntry&) const = default;
};

// The fitted scale. Negative values lean toward conceptual orality.
struct ScaleModel {
  std::vector<std::string> feature_names;
  std::array<double, kFeatureCount> col_means{};
  std::array<double, kFeatureCount> col_sds{};
  std::array<double, kFeatureCount> pc1_loadings{};  // orientation already applied
  std::array<double, kFeatureCount> pc2_loadings{};  // for 2-D plots only
  int orientation = 1;  // +1 if the raw PCA sign was kept, -1 if flipped
  double explained_ratio_pc1 = 0.0;
  double explained_ratio_pc2 = 0.0;
  std::vector<ReferenceEntry> reference;

  bool operator==(const ScaleModel&) const = default;
};

enum class ScoreMode { projection, refit };
std::string_view to_string(ScoreMode m);
std::optional<ScoreMode> parse_score_mode(std::string_view s);

struct ColScore {
  std::string doc_id;
  double value = 0.0;
  ScoreMode mode = ScoreMode::projection;
  ColClass binary = ColClass::literacy;
};

struct ClassifyOptions {
  int restarts = kDefaultRestarts;
  std::uint64_t seed = 0;
};

// Standardize, PCA, keep PC1. The sign is fixed so the pronouns_12 loading
// is negative; a disagreement with the label means is reported through
// `warnings`. Needs every row labelled and at least 2 rows per label.
ScaleModel fit_scale(const std::vector<FeatureVector>& refs, std::vector<std::string>* warnings = nullptr);

// Model built from the embedded reference matrix.
ScaleModel default_scale();

// PC1 value of fv under the stored moments and loadings.
double projection_value(const ScaleModel& model, const FeatureVector& fv);

ColScore score_projection(const ScaleModel& model, const FeatureVector& fv, const ClassifyOptions& opts = {});

struct RefitResult {
  ColScore score;
  std::vector<double> scores;  // references in model order, new text last
};

// Refits on references + fv without touching `model`.
RefitResult score_refit(const ScaleModel& model, const FeatureVector& fv, const ClassifyOptions& opts = {});

// k-means on the standardized references + fv; the cluster with the lower
// mean scale value is orality.
ColClass classify(const ScaleModel& model, const FeatureVector& fv, const ClassifyOptions& opts = {});

// Raw reference rows as a matrix (model feature order).
Matrix reference_matrix(const ScaleModel& model);

std::string model_to_json(const ScaleModel& model);
ScaleModel model_from_json(std::string_view text);
void save_model(const ScaleModel& model, const std::filesystem::path& path);
ScaleModel load_model(const std::filesystem::path& path);

}  // namespace col
