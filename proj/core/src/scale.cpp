#include "colscale/scale.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "colscale/errors.hpp"
#include "colscale/reference_data.hpp"

namespace col {
namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kPronounColumn = static_cast<std::size_t>(Feature::pronouns_12);

Matrix rows_of(const std::vector<FeatureVector>& fvs) {
  Matrix m;
  for (const auto& fv : fvs) m.append_row(fv.values);
  return m;
}

void check_complete(const FeatureVector& fv) {
  for (std::size_t i = 0; i < kFeatureCount; ++i)
    if (!std::isfinite(fv.values[i]))
      throw ArgumentError("feature '" + std::string(feature_name(kAllFeatures[i])) + "' missing for '" +
                          fv.doc_id + "'");
}

struct Fit {
  StandardizedMatrix std;
  std::array<double, kFeatureCount> pc1{};
  std::array<double, kFeatureCount> pc2{};
  int orientation = 1;
  double ratio1 = 0, ratio2 = 0;
  std::vector<double> scores;
};

Fit fit_matrix(const Matrix& raw) {
  Fit f;
  f.std = standardize(raw, feature_names());
  const auto model = pca(f.std);
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    f.pc1[i] = model.loadings(i, 0);
    f.pc2[i] = model.loadings(i, 1);
  }
  if (f.pc1[kPronounColumn] > 0) {
    f.orientation = -1;
    for (double& v : f.pc1) v = -v;
  }
  f.ratio1 = model.explained_ratio[0];
  f.ratio2 = model.explained_ratio[1];
  for (std::size_t r = 0; r < raw.rows(); ++r) {
    double s = 0;
    for (std::size_t i = 0; i < kFeatureCount; ++i) s += f.pc1[i] * f.std.data(r, i);
    f.scores.push_back(s);
  }
  return f;
}

std::vector<double> to_vec(const std::array<double, kFeatureCount>& a) { return {a.begin(), a.end()}; }

std::array<double, kFeatureCount> to_arr(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != kFeatureCount)
    throw ParseError(std::string("model: '") + key + "' must be an array of 9 numbers", 0);
  std::array<double, kFeatureCount> a{};
  for (std::size_t i = 0; i < kFeatureCount; ++i) a[i] = j[key][i].get<double>();
  return a;
}

}  // namespace

std::string_view to_string(ScoreMode m) { return m == ScoreMode::projection ? "projection" : "refit"; }

std::optional<ScoreMode> parse_score_mode(std::string_view s) {
  if (s == "projection") return ScoreMode::projection;
  if (s == "refit") return ScoreMode::refit;
  return std::nullopt;
}

ScaleModel fit_scale(const std::vector<FeatureVector>& refs, std::vector<std::string>* warnings) {
  std::size_t n_oral = 0, n_lit = 0;
  for (const auto& fv : refs) {
    if (!fv.label) throw ArgumentError("fit_scale: reference '" + fv.doc_id + "' has no label");
    check_complete(fv);
    (*fv.label == ColClass::orality ? n_oral : n_lit) += 1;
  }
  if (n_oral < 2 || n_lit < 2)
    throw ArgumentError("fit_scale: need at least 2 references per label (got " + std::to_string(n_oral) +
                        " orality, " + std::to_string(n_lit) + " literacy)");

  const auto f = fit_matrix(rows_of(refs));
  ScaleModel m;
  m.feature_names = feature_names();
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    m.col_means[i] = f.std.col_means[i];
    m.col_sds[i] = f.std.col_sds[i];
  }
  m.pc1_loadings = f.pc1;
  m.pc2_loadings = f.pc2;
  m.orientation = f.orientation;
  m.explained_ratio_pc1 = f.ratio1;
  m.explained_ratio_pc2 = f.ratio2;

  double sum_oral = 0, sum_lit = 0;
  for (std::size_t r = 0; r < refs.size(); ++r) {
    ReferenceEntry e;
    e.doc_id = refs[r].doc_id;
    e.label = *refs[r].label;
    e.category = refs[r].category;
    e.raw = refs[r].values;
    e.col_score = f.scores[r];
    (e.label == ColClass::orality ? sum_oral : sum_lit) += e.col_score;
    m.reference.push_back(std::move(e));
  }
  if (sum_oral / static_cast<double>(n_oral) >= sum_lit / static_cast<double>(n_lit) && warnings)
    warnings->push_back(
        "orientation: pronouns_12 anchor puts orality references above literacy references on average");
  return m;
}

ScaleModel default_scale() { return fit_scale(reference_feature_vectors()); }

double projection_value(const ScaleModel& model, const FeatureVector& fv) {
  check_complete(fv);
  double s = 0;
  for (std::size_t i = 0; i < kFeatureCount; ++i)
    s += model.pc1_loadings[i] * (fv.values[i] - model.col_means[i]) / model.col_sds[i];
  return s;
}

Matrix reference_matrix(const ScaleModel& model) {
  Matrix m;
  for (const auto& e : model.reference) m.append_row(e.raw);
  return m;
}

ColScore score_projection(const ScaleModel& model, const FeatureVector& fv, const ClassifyOptions& opts) {
  ColScore s;
  s.doc_id = fv.doc_id;
  s.value = projection_value(model, fv);
  s.mode = ScoreMode::projection;
  s.binary = classify(model, fv, opts);
  return s;
}

RefitResult score_refit(const ScaleModel& model, const FeatureVector& fv, const ClassifyOptions& opts) {
  check_complete(fv);
  Matrix raw = reference_matrix(model);
  raw.append_row(fv.values);
  const auto f = fit_matrix(raw);
  RefitResult r;
  r.scores = f.scores;
  r.score.doc_id = fv.doc_id;
  r.score.value = f.scores.back();
  r.score.mode = ScoreMode::refit;
  r.score.binary = classify(model, fv, opts);
  return r;
}

ColClass classify(const ScaleModel& model, const FeatureVector& fv, const ClassifyOptions& opts) {
  check_complete(fv);
  Matrix raw = reference_matrix(model);
  raw.append_row(fv.values);
  const auto f = fit_matrix(raw);
  const auto km = kmeans2(f.std.data, opts.restarts, opts.seed);
  double sum[2] = {0, 0};
  std::size_t cnt[2] = {0, 0};
  for (std::size_t i = 0; i < km.assignments.size(); ++i) {
    const auto c = static_cast<std::size_t>(km.assignments[i]);
    sum[c] += f.scores[i];
    ++cnt[c];
  }
  if (cnt[0] == 0 || cnt[1] == 0) throw NumericError("classify: k-means produced an empty cluster");
  const int oral_cluster = sum[0] / static_cast<double>(cnt[0]) < sum[1] / static_cast<double>(cnt[1]) ? 0 : 1;
  return km.assignments.back() == oral_cluster ? ColClass::orality : ColClass::literacy;
}

std::string model_to_json(const ScaleModel& m) {
  json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  j["feature_names"] = m.feature_names;
  j["col_means"] = to_vec(m.col_means);
  j["col_sds"] = to_vec(m.col_sds);
  j["pc1_loadings"] = to_vec(m.pc1_loadings);
  j["pc2_loadings"] = to_vec(m.pc2_loadings);
  j["orientation"] = m.orientation;
  j["explained_ratio_pc1"] = m.explained_ratio_pc1;
  j["explained_ratio_pc2"] = m.explained_ratio_pc2;
  json refs = json::array();
  for (const auto& e : m.reference) {
    json r;
    r["doc_id"] = e.doc_id;
    r["label"] = to_string(e.label);
    r["category"] = e.category ? json(*e.category) : json(nullptr);
    r["features"] = to_vec(e.raw);
    r["col_score"] = e.col_score;
    refs.push_back(std::move(r));
  }
  j["reference"] = std::move(refs);
  return j.dump(2) + "\n";
}

ScaleModel model_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model file is truncated or not JSON: ") + e.what(), 0);
  }
  try {
    if (!j.is_object() || j.value("format", "") != kModelFormat)
      throw ParseError("not a colscale model file", 0);
    if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != kModelVersion)
      throw VersionError("model version mismatch: expected " + std::to_string(kModelVersion) + ", found " +
                         (j.contains("version") ? j["version"].dump() : std::string("none")));
    ScaleModel m;
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    if (m.feature_names != feature_names()) throw ParseError("model: unexpected feature names", 0);
    m.col_means = to_arr(j, "col_means");
    m.col_sds = to_arr(j, "col_sds");
    m.pc1_loadings = to_arr(j, "pc1_loadings");
    m.pc2_loadings = to_arr(j, "pc2_loadings");
    m.orientation = j.at("orientation").get<int>();
    m.explained_ratio_pc1 = j.at("explained_ratio_pc1").get<double>();
    m.explained_ratio_pc2 = j.at("explained_ratio_pc2").get<double>();
    for (const auto& r : j.at("reference")) {
      ReferenceEntry e;
      e.doc_id = r.at("doc_id").get<std::string>();
      auto label = parse_col_class(r.at("label").get<std::string>());
      if (!label) throw ParseError("model: bad label for '" + e.doc_id + "'", 0);
      e.label = *label;
      if (r.contains("category") && r["category"].is_string()) e.category = r["category"].get<std::string>();
      e.raw = to_arr(r, "features");
      e.col_score = r.at("col_score").get<double>();
      m.reference.push_back(std::move(e));
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model: ") + e.what(), 0);
  }
}

void save_model(const ScaleModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << model_to_json(model);
}

ScaleModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

}  // namespace col
