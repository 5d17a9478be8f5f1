#include <benchmark/benchmark.h>

#include <random>

#include "colscale/conllu.hpp"
#include "colscale/features.hpp"
#include "colscale/reference_data.hpp"
#include "colscale/scale.hpp"
#include "colscale/stats.hpp"

using namespace col;

namespace {

Document replicated_corpus(int copies) {
  const auto one = parse_conllu_file(COL_FIXTURE_DIR "/corpus/treatise.conllu");
  Document d = one;
  for (int i = 1; i < copies; ++i) d.sentences.insert(d.sentences.end(), one.sentences.begin(), one.sentences.end());
  return d;
}

}  // namespace

static void BM_FitScale(benchmark::State& state) {
  const auto refs = reference_feature_vectors();
  for (auto _ : state) benchmark::DoNotOptimize(fit_scale(refs));
}
BENCHMARK(BM_FitScale);

static void BM_ScoreProjection(benchmark::State& state) {
  const auto model = default_scale();
  const auto fv = reference_feature_vectors()[5];
  for (auto _ : state) benchmark::DoNotOptimize(projection_value(model, fv));
}
BENCHMARK(BM_ScoreProjection);

static void BM_ScoreRefit(benchmark::State& state) {
  const auto model = default_scale();
  const auto fv = reference_feature_vectors()[5];
  for (auto _ : state) benchmark::DoNotOptimize(score_refit(model, fv));
}
BENCHMARK(BM_ScoreRefit);

static void BM_Kmeans(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  Matrix m(static_cast<std::size_t>(state.range(0)), 9);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = nd(rng) + (r % 2 ? 3.0 : 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(kmeans2(m));
}
BENCHMARK(BM_Kmeans)->Arg(25)->Arg(1000);

static void BM_ExtractAll(benchmark::State& state) {
  const auto doc = replicated_corpus(static_cast<int>(state.range(0)));
  const auto lex = LexiconConfig::german_ud();
  for (auto _ : state) benchmark::DoNotOptimize(extract_all(doc, lex));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(doc.total_tokens()));
}
BENCHMARK(BM_ExtractAll)->Arg(1)->Arg(300);

static void BM_ParseConllu(benchmark::State& state) {
  const auto text = to_conllu(replicated_corpus(300));
  for (auto _ : state) benchmark::DoNotOptimize(parse_conllu(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseConllu);

BENCHMARK_MAIN();
