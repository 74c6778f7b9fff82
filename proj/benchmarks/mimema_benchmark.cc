#include <benchmark/benchmark.h>

#include "mimema/lexicon.h"
#include "mimema/metric.h"
#include "mimema/phonetic.h"
#include "mimema/rebus.h"
#include "mimema/simulator.h"
#include "mimema/skeleton.h"
#include "mimema/utf8.h"

namespace mimema {
namespace {

const FrequencyWordList& Words() {
  static const FrequencyWordList* const kWords = new FrequencyWordList(
      FrequencyWordList::Load(std::string(MIMEMA_DATA_DIR) +
                              "/french_words.tsv"));
  return *kWords;
}

void BM_Skeletonize(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(Skeletonize(U"indépendance"));
  }
}
BENCHMARK(BM_Skeletonize);

void BM_SkeletonAcceptorScore(benchmark::State& state) {
  const WeightedAcceptor a = BuildSkeletonAcceptor(U"toujours");
  for (auto _ : state) {
    benchmark::DoNotOptimize(a.Score(U"tjs"));
  }
}
BENCHMARK(BM_SkeletonAcceptorScore);

void BM_RebusScore(benchmark::State& state) {
  const RebusModel model;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.Score(U"a2m1"));
  }
}
BENCHMARK(BM_RebusScore);

void BM_Phonetize(benchmark::State& state) {
  const std::u32string word = state.range(0) == 0 ? U"cause" : U"beaucoup";
  for (auto _ : state) {
    benchmark::DoNotOptimize(Phonetize(word));
  }
}
BENCHMARK(BM_Phonetize)->Arg(0)->Arg(1);

void BM_EditCost(benchmark::State& state) {
  const std::u32string label(state.range(0), U'a');
  std::u32string hypothesis;
  for (int i = 0; i < state.range(0); ++i) hypothesis += U"ab"[i % 2];
  for (auto _ : state) {
    benchmark::DoNotOptimize(EditCost(label, hypothesis));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EditCost)->RangeMultiplier(4)->Range(8, 512)->Complexity();

void BM_BuildLexicon(benchmark::State& state) {
  const FrequencyWordList words = Words().Prefix(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildLexicon(words));
  }
}
BENCHMARK(BM_BuildLexicon)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Decode(benchmark::State& state) {
  static const ResourceBundle* const kBundle =
      new ResourceBundle(MakeDevelopedBundle(Words()));
  const ConfusionModel model = ConfusionModel::Default();
  Rng rng(1);
  const CandidateList list = Corrupt(U"bonjour", model, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Decode(list, *kBundle));
  }
}
BENCHMARK(BM_Decode)->Unit(benchmark::kMicrosecond);

void BM_Corrupt(benchmark::State& state) {
  const ConfusionModel model = ConfusionModel::Default();
  Rng rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Corrupt(U"maintenant", model, rng));
  }
}
BENCHMARK(BM_Corrupt)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace mimema

BENCHMARK_MAIN();
