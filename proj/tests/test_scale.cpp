#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "colscale/errors.hpp"
#include "colscale/reference_data.hpp"
#include "colscale/scale.hpp"

using namespace col;

namespace {

const ScaleModel& model() {
  static const ScaleModel m = default_scale();
  return m;
}

FeatureVector reference_row(const std::string& id) {
  for (const auto& fv : reference_feature_vectors())
    if (fv.doc_id == id) return fv;
  throw std::runtime_error("no reference row " + id);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Scale, ReproducesPrintedScores) {
  const auto texts = reference_texts();
  ASSERT_EQ(model().reference.size(), texts.size());
  std::vector<double> computed, printed;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    EXPECT_EQ(model().reference[i].doc_id, texts[i].doc_id);
    EXPECT_NEAR(model().reference[i].col_score, texts[i].published_col, 0.15) << texts[i].doc_id;
    computed.push_back(model().reference[i].col_score);
    printed.push_back(texts[i].published_col);
  }
  EXPECT_GE(spearman(computed, printed), 0.99);
}

TEST(Scale, FrozenScores) {
  EXPECT_NEAR(model().reference.front().col_score, 1.675, 5e-4);  // D_anthus
  EXPECT_NEAR(model().reference.back().col_score, -1.869, 5e-4);  // N_zimmer
  EXPECT_NEAR(projection_value(model(), reference_row("N_briefwechsel")), -3.781, 5e-4);
  EXPECT_NEAR(projection_value(model(), reference_row("D_simmel")), 3.378, 5e-4);
}

TEST(Scale, ModelInvariants) {
  double norm = 0;
  for (double v : model().pc1_loadings) norm += v * v;
  EXPECT_NEAR(std::sqrt(norm), 1.0, 1e-9);
  EXPECT_LT(model().pc1_loadings[static_cast<std::size_t>(Feature::pronouns_12)], 0.0);
  double n_sum = 0, d_sum = 0;
  int n = 0, d = 0;
  for (const auto& r : model().reference) {
    (r.label == ColClass::orality ? n_sum : d_sum) += r.col_score;
    (r.label == ColClass::orality ? n : d) += 1;
  }
  EXPECT_LT(n_sum / n, d_sum / d);
  EXPECT_NEAR(model().explained_ratio_pc1, 0.51689, 1e-5);
}

TEST(Scale, FitIsDeterministicAndWarnsOnlyWhenOrientationDisagrees) {
  std::vector<std::string> warnings;
  const auto a = fit_scale(reference_feature_vectors(), &warnings);
  EXPECT_TRUE(warnings.empty());
  EXPECT_EQ(a, fit_scale(reference_feature_vectors()));

  // Swap the labels: the pronoun anchor still decides, and the mismatch is reported.
  auto swapped = reference_feature_vectors();
  for (auto& fv : swapped) fv.label = *fv.label == ColClass::orality ? ColClass::literacy : ColClass::orality;
  warnings.clear();
  const auto b = fit_scale(swapped, &warnings);
  EXPECT_EQ(b.pc1_loadings, a.pc1_loadings);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(Scale, FitErrors) {
  auto rows = reference_feature_vectors();
  for (auto& fv : rows) fv.label = ColClass::literacy;
  EXPECT_THROW(fit_scale(rows), ArgumentError);
  rows = reference_feature_vectors();
  rows[3].label.reset();
  EXPECT_THROW(fit_scale(rows), ArgumentError);
}

TEST(Scale, ProjectionOfReferenceRowsIsStoredScore) {
  for (const auto& fv : reference_feature_vectors()) {
    const auto s = score_projection(model(), fv);
    EXPECT_EQ(s.mode, ScoreMode::projection);
    double stored = 0;
    for (const auto& r : model().reference)
      if (r.doc_id == fv.doc_id) stored = r.col_score;
    EXPECT_NEAR(s.value, stored, 1e-12);
  }
}

TEST(Scale, RefitOnColumnMeanIsZero) {
  FeatureVector mean_row;
  mean_row.doc_id = "mean";
  mean_row.values = model().col_means;
  const auto r = score_refit(model(), mean_row);
  EXPECT_NEAR(r.score.value, 0.0, 1e-12);
  EXPECT_EQ(r.scores.size(), 25u);
  EXPECT_EQ(r.score.binary, ColClass::literacy);  // pinned by an sklearn run
  EXPECT_EQ(classify(model(), mean_row), ColClass::literacy);
}

TEST(Scale, RefitDuplicateRows) {
  EXPECT_NEAR(score_refit(model(), reference_row("D_gessner")).score.value, 0.9146, 5e-4);
  EXPECT_NEAR(score_refit(model(), reference_row("N_zimmer")).score.value, -1.7732, 5e-4);
  // Extreme rows move further when duplicated; the shift is pinned, not bounded.
  const double soeldner = score_refit(model(), reference_row("N_soeldnerleben")).score.value;
  EXPECT_NEAR(soeldner - projection_value(model(), reference_row("N_soeldnerleben")), 0.3342, 5e-4);
}

TEST(Scale, RefitLeavesModelUntouched) {
  const ScaleModel copy = model();
  score_refit(model(), reference_row("D_ranke"));
  EXPECT_EQ(copy, model());
}

TEST(Scale, ProjectionRefitCoherenceOnConvexMixtures) {
  std::mt19937_64 rng(12);
  std::gamma_distribution<double> g(1.0, 1.0);
  const auto refs = reference_feature_vectors();
  double worst = 0;
  for (int t = 0; t < 150; ++t) {
    std::vector<double> w(refs.size());
    double total = 0;
    for (auto& x : w) total += x = g(rng);
    FeatureVector fv;
    fv.doc_id = "mix";
    for (std::size_t i = 0; i < refs.size(); ++i)
      for (std::size_t j = 0; j < kFeatureCount; ++j) fv.values[j] += w[i] / total * refs[i].values[j];
    worst = std::max(worst, std::abs(score_projection(model(), fv).value - score_refit(model(), fv).score.value));
  }
  EXPECT_LE(worst, 0.3);
}

TEST(Scale, ClassifySelfConsistency) {
  for (const auto& fv : reference_feature_vectors()) EXPECT_EQ(classify(model(), fv), *fv.label) << fv.doc_id;
}

TEST(Scale, ClassifyInvariantUnderPositiveRescaling) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> factor(0.05, 20.0);
  const auto refs = reference_feature_vectors();
  for (int t = 0; t < 8; ++t) {
    FeatureVector probe = refs[rng() % refs.size()];
    for (std::size_t j = 0; j < kFeatureCount; ++j) probe.values[j] *= 0.8 + 0.4 * (static_cast<double>(rng() % 100) / 100);
    const auto base = classify(model(), probe);
    const auto base_score = score_refit(model(), probe).score.value;

    const std::size_t col = rng() % kFeatureCount;
    const double f = factor(rng);
    auto scaled_refs = refs;
    for (auto& fv : scaled_refs) fv.values[col] *= f;
    auto scaled_probe = probe;
    scaled_probe.values[col] *= f;
    const auto scaled_model = fit_scale(scaled_refs);
    EXPECT_EQ(classify(scaled_model, scaled_probe), base);
    EXPECT_NEAR(score_refit(scaled_model, scaled_probe).score.value, base_score, 1e-9);
    EXPECT_NEAR(score_projection(scaled_model, scaled_probe).value, score_projection(model(), probe).value, 1e-9);
  }
}

TEST(ModelIo, RoundTrip) {
  const auto text = model_to_json(model());
  EXPECT_EQ(model_from_json(text), model());
  EXPECT_EQ(text.back(), '\n');
  const auto path = std::filesystem::temp_directory_path() / "colscale_model_rt.json";
  save_model(model(), path);
  EXPECT_EQ(load_model(path), model());
  std::filesystem::remove(path);
}

TEST(ModelIo, VersionAndTruncation) {
  auto text = model_to_json(model());
  auto edited = text;
  edited.replace(edited.find("\"version\": 1"), 12, "\"version\": 7");
  EXPECT_THROW(model_from_json(edited), VersionError);
  EXPECT_THROW(model_from_json(text.substr(0, text.size() / 2)), ParseError);
  EXPECT_THROW(load_model("/nonexistent/model.json"), Error);
}

TEST(ModelIo, ShippedDefaultModelIsGolden) {
  const auto shipped = load_model(COL_DATA_DIR "/default_model.json");
  EXPECT_EQ(shipped, model());
  EXPECT_EQ(slurp(COL_DATA_DIR "/default_model.json"), model_to_json(model()));
  // And the build-time regeneration agrees byte for byte.
  EXPECT_EQ(slurp(COL_GENERATED_MODEL), model_to_json(model()));
}
