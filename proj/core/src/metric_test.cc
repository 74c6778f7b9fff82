#include "mimema/metric.h"

#include <random>

#include <gtest/gtest.h>

#include "mimema/error.h"
#include "testing/oracles.h"

namespace mimema {
namespace {

std::u32string RandomString(std::mt19937& gen, std::size_t alphabet,
                            std::size_t max_len) {
  std::u32string s;
  const std::size_t len = gen() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    s += static_cast<char32_t>(U'a' + gen() % alphabet);
  }
  return s;
}

TEST(EditCostTest, HandwritingExample) {
  const AlignmentReport r = EditCost(U"bjr A 2min", U"l o j r A z mu i n");
  EXPECT_EQ(r.label_length, 8u);
  EXPECT_EQ(r.edit_cost, 2u);
  EXPECT_DOUBLE_EQ(r.tr, 75.0);
}

TEST(EditCostTest, TrivialCases) {
  const AlignmentReport same = EditCost(U"slt", U"slt");
  EXPECT_EQ(same.edit_cost, 0u);
  EXPECT_DOUBLE_EQ(same.tr, 100.0);
  const AlignmentReport empty = EditCost(U"abc", U"");
  EXPECT_EQ(empty.edit_cost, 3u);
  EXPECT_DOUBLE_EQ(empty.tr, 0.0);
}

TEST(EditCostTest, EmptyLabel) {
  for (std::u32string_view label : {U"", U"  \t"}) {
    try {
      EditCost(label, U"x");
      FAIL();
    } catch (const Error& e) {
      EXPECT_STREQ(e.what(), "empty label");
    }
  }
}

TEST(EditCostTest, InsertionsAreFree) {
  EXPECT_EQ(EditCost(U"ab", U"xxaxxbxx").edit_cost, 0u);
}

TEST(EditCostTest, CaseAndDiacriticFolding) {
  EXPECT_EQ(EditCost(U"Été", U"ete").edit_cost, 2u);
  MetricOptions fold_case;
  fold_case.fold_case = true;
  EXPECT_EQ(EditCost(U"Été", U"été", fold_case).edit_cost, 0u);
  MetricOptions fold_all;
  fold_all.fold_case = true;
  fold_all.fold_diacritics = true;
  EXPECT_EQ(EditCost(U"Été", U"ete", fold_all).edit_cost, 0u);
}

TEST(EditCostTest, ScriptReplaysToTheHypothesis) {
  const AlignmentReport r = EditCost(U"bjr A 2min", U"l o j r A z mu i n");
  EXPECT_EQ(ApplyEditScript(NormalizeForMetric(U"bjr A 2min"), r.edit_script),
            NormalizeForMetric(U"l o j r A z mu i n"));
  std::size_t cost = 0;
  for (const EditOp& op : r.edit_script) {
    cost += op.kind == EditKind::kSubstitute || op.kind == EditKind::kDelete;
  }
  EXPECT_EQ(cost, r.edit_cost);
}

TEST(EditCostPropertyTest, MatchesLcsOracle) {
  std::mt19937 gen(2024);
  std::size_t mismatches = 0;
  for (int i = 0; i < 2000; ++i) {
    const std::size_t alphabet = 1 + gen() % 8;
    std::u32string label = RandomString(gen, alphabet, 30);
    if (label.empty()) label = U"a";
    const std::u32string hyp = RandomString(gen, alphabet, 30);
    const AlignmentReport r = EditCost(label, hyp);
    mismatches += r.edit_cost != label.size() - testing::LcsLength(label, hyp);
    EXPECT_EQ(ApplyEditScript(label, r.edit_script), hyp);
    EXPECT_GE(r.tr, 0.0);
    EXPECT_LE(r.tr, 100.0);
    EXPECT_DOUBLE_EQ(
        r.tr, 100.0 * static_cast<double>(r.label_length - r.edit_cost) /
                  static_cast<double>(r.label_length));
  }
  EXPECT_EQ(mismatches, 0u);
}

TEST(EditCostPropertyTest, InsertionInvariantAndDeletionMonotone) {
  std::mt19937 gen(99);
  for (int i = 0; i < 500; ++i) {
    std::u32string label = RandomString(gen, 4, 12);
    if (label.empty()) label = U"b";
    std::u32string hyp = RandomString(gen, 4, 12);
    const std::size_t d = EditCost(label, hyp).edit_cost;
    std::u32string inserted = hyp;
    inserted.insert(gen() % (inserted.size() + 1), 1,
                    static_cast<char32_t>(U'a' + gen() % 6));
    EXPECT_LE(EditCost(label, inserted).edit_cost, d);
    if (!hyp.empty()) {
      std::u32string deleted = hyp;
      deleted.erase(gen() % deleted.size(), 1);
      EXPECT_GE(EditCost(label, deleted).edit_cost, d);
    }
  }
}

TEST(CorpusTrTest, Aggregation) {
  using Pairs = std::vector<std::pair<std::u32string, std::u32string>>;
  EXPECT_DOUBLE_EQ(CorpusTr(Pairs{{U"bjr A 2min", U"l o j r A z mu i n"}}),
                   75.0);
  EXPECT_DOUBLE_EQ(CorpusTr(Pairs{{U"abcd", U"abcd"}, {U"efgh", U""}}), 50.0);
  // Character weighting versus message averaging.
  const Pairs uneven = {{U"a", U""}, {U"bcd", U"bcd"}};
  EXPECT_DOUBLE_EQ(CorpusTr(uneven), 75.0);
  EXPECT_DOUBLE_EQ(CorpusTr(uneven, Aggregation::kMessageAveraged), 50.0);
  try {
    CorpusTr(Pairs{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "empty corpus");
  }
}

TEST(CorpusTrPropertyTest, StaysWithinBounds) {
  std::mt19937 gen(5);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::pair<std::u32string, std::u32string>> pairs;
    const int n = 1 + gen() % 10;
    for (int k = 0; k < n; ++k) {
      std::u32string label = RandomString(gen, 5, 15);
      if (label.empty()) label = U"c";
      pairs.emplace_back(label, RandomString(gen, 5, 15));
    }
    for (Aggregation a :
         {Aggregation::kCharacterWeighted, Aggregation::kMessageAveraged}) {
      const double tr = CorpusTr(pairs, a);
      EXPECT_GE(tr, 0.0);
      EXPECT_LE(tr, 100.0);
    }
  }
}

}  // namespace
}  // namespace mimema
