#include "mimema/simulator.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "mimema/error.h"
#include "mimema/metric.h"
#include "mimema/utf8.h"
#include "testing/oracles.h"

namespace mimema {
namespace {

ConfusionModel ForcedModel() {
  ConfusionModel m;
  m.substitutions[U'b'] = {{U"lo", 1.0}};
  m.substitutions[U'2'] = {{U"z", 1.0}};
  return m;
}

const FrequencyWordList& SmallWords() {
  static const FrequencyWordList* const kWords = new FrequencyWordList(
      FrequencyWordList::Load(testing::DataPath("french_words.tsv"))
          .Prefix(200));
  return *kWords;
}

TEST(ConfusionModelTest, DefaultIsValidAndMatchesTheDataFile) {
  const ConfusionModel def = ConfusionModel::Default();
  EXPECT_NO_THROW(def.Validate());
  EXPECT_EQ(ConfusionModel::Load(testing::DataPath("confusion.conf")), def);
  EXPECT_EQ(def.substitutions.at(U'b')[0].output, U"lo");
}

TEST(ConfusionModelTest, WriteParsesBack) {
  const ConfusionModel def = ConfusionModel::Default();
  std::ostringstream out;
  def.Write(out);
  std::istringstream in(out.str());
  EXPECT_EQ(ConfusionModel::Parse(in), def);
}

TEST(ConfusionModelTest, NoiseScaleMultipliesProbabilities) {
  std::istringstream in(
      "noise_scale = 2\ndeletion = 0.01\n[substitutions]\na\to:0.1\n");
  const ConfusionModel m = ConfusionModel::Parse(in);
  EXPECT_DOUBLE_EQ(m.deletion, 0.02);
  EXPECT_DOUBLE_EQ(m.substitutions.at(U'a')[0].probability, 0.2);
  EXPECT_DOUBLE_EQ(m.KeepProbability(U'a'), 0.8);
  EXPECT_DOUBLE_EQ(m.KeepProbability(U'z'), 1.0);
}

TEST(ConfusionModelTest, ParseErrors) {
  const auto fails = [](std::string text) {
    std::istringstream in(text);
    try {
      ConfusionModel::Parse(in);
    } catch (const Error&) {
      return true;
    }
    return false;
  };
  EXPECT_TRUE(fails("volume = 3\n"));
  EXPECT_TRUE(fails("[substitutions]\nab\tx:0.1\n"));
  EXPECT_TRUE(fails("[substitutions]\na\tx0.1\n"));
  EXPECT_TRUE(fails("[substitutions]\na\tx:0.1\na\ty:0.1\n"));
  EXPECT_TRUE(fails("[other]\nx\n"));
  EXPECT_TRUE(fails("[substitutions]\na\tx:0.7,y:0.7\n"));
  EXPECT_TRUE(fails("insertion = 0.1\n[insertions]\ni\t0.5\n"));
}

TEST(ConfusionModelTest, ValidateRejectsBadTables) {
  const auto invalid = [](const ConfusionModel& m) {
    try {
      m.Validate();
      return false;
    } catch (const Error& e) {
      return std::string(e.what()).rfind("invalid confusion model", 0) == 0;
    }
  };
  ConfusionModel m;
  m.deletion = 1.5;
  EXPECT_TRUE(invalid(m));
  m = {};
  m.substitutions[U'a'] = {{U"a", 0.1}};
  EXPECT_TRUE(invalid(m));
  m = {};
  m.substitutions[U'a'] = {{U"abc", 0.1}};
  EXPECT_TRUE(invalid(m));
  m = {};
  m.substitutions[U'a'] = {{U"o", -0.1}};
  EXPECT_TRUE(invalid(m));
  EXPECT_THROW(Corrupt(U"abc", m), Error);
}

TEST(CorruptTest, ZeroNoiseIsIdentity) {
  const ConfusionModel silent = ConfusionModel::Default().Scaled(0.0);
  const CandidateList list = Corrupt(U"bonjour", silent);
  EXPECT_EQ(list.observed, U"bonjour");
  ASSERT_EQ(list.candidates.size(), 1u);
  EXPECT_EQ(list.candidates[0].form, U"bonjour");
  EXPECT_EQ(list.candidates[0].channel_score, 0.0);
}

TEST(CorruptTest, ForcedOversegmentationAndSubstitution) {
  const CandidateList list = Corrupt(U"bjrA2min", ForcedModel());
  EXPECT_EQ(list.observed, U"lojrAzmin");
  EXPECT_TRUE(list.Contains(U"bjrA2min"));
}

TEST(CorruptTest, TruthIsAlwaysACandidate) {
  const ConfusionModel noisy = ConfusionModel::Default().Scaled(3.0);
  Rng rng(5);
  for (const WordFrequency& wf : SmallWords().entries()) {
    const std::u32string word = Utf8ToU32(wf.word);
    const CandidateList list = Corrupt(word, noisy, rng);
    EXPECT_TRUE(list.Contains(word)) << wf.word;
    ASSERT_FALSE(list.candidates.empty());
    for (std::size_t i = 1; i < list.candidates.size(); ++i) {
      EXPECT_GE(list.candidates[i - 1].channel_score,
                list.candidates[i].channel_score);
    }
    EXPECT_LE(list.candidates.size(), 2u + CorruptOptions{}.alternatives);
  }
}

TEST(CorruptTest, SameSeedSameOutput) {
  ConfusionModel noisy = ConfusionModel::Default().Scaled(4.0);
  noisy.seed = 99;
  const CandidateList a = Corrupt(U"indépendance", noisy);
  const CandidateList b = Corrupt(U"indépendance", noisy);
  EXPECT_EQ(a.observed, b.observed);
  ASSERT_EQ(a.candidates.size(), b.candidates.size());
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    EXPECT_EQ(a.candidates[i].form, b.candidates[i].form);
    EXPECT_EQ(a.candidates[i].channel_score, b.candidates[i].channel_score);
  }
}

TEST(CorruptTest, EmptyTokenIsAnError) {
  EXPECT_THROW(Corrupt(U"", ConfusionModel::Default()), Error);
}

TEST(ChannelLogProbTest, HandArithmetic) {
  ConfusionModel m;
  m.deletion = 0.1;
  m.insertion = 0.2;
  m.insertion_chars = {{U'i', 1.0}};
  m.substitutions[U'b'] = {{U"lo", 0.3}};
  // "b" read as "lo": survive, oversegment, no insertion.
  EXPECT_NEAR(m.ChannelLogProb(U"b", U"lo"), std::log(0.9 * 0.3 * 0.8), 1e-12);
  // "b" kept then followed by an inserted i.
  EXPECT_NEAR(m.ChannelLogProb(U"b", U"bi"), std::log(0.9 * 0.7 * 0.2), 1e-12);
  // Deleted entirely.
  EXPECT_NEAR(m.ChannelLogProb(U"b", U""), std::log(0.1 * 0.8), 1e-12);
  EXPECT_EQ(m.ChannelLogProb(U"b", U"x"),
            -std::numeric_limits<double>::infinity());
  EXPECT_EQ(m.ChannelLogProb(U"", U""), 0.0);
}

TEST(ChannelLogProbTest, SampledOutputsAreReachable) {
  const ConfusionModel noisy = ConfusionModel::Default().Scaled(4.0);
  Rng rng(1);
  for (const WordFrequency& wf : SmallWords().entries()) {
    const std::u32string word = Utf8ToU32(wf.word);
    const std::u32string sample = noisy.Sample(word, rng);
    EXPECT_TRUE(std::isfinite(noisy.ChannelLogProb(word, sample)))
        << wf.word << " -> " << U32ToUtf8(sample);
  }
}

TEST(DecodeTest, EmptyBundleReturnsTheTopChannelCandidate) {
  CandidateList list{U"sll", {{U"sll", -0.5}, {U"slt", -3.0}}};
  EXPECT_EQ(Decode(list, ResourceBundle{}), U"sll");
  CandidateList single{U"x", {{U"x", -1.0}}};
  ResourceBundle rich;
  auto lex = std::make_shared<Lexicon>();
  lex->Add("slt", {"salut", Generator::kSkeleton, 100});
  rich.lexicon = lex;
  EXPECT_EQ(Decode(single, rich), U"x");
}

TEST(DecodeTest, LexiconBonusOvercomesTheChannelGap) {
  // Channel gap 2.5; membership gives 8 + log(100) = 12.6.
  CandidateList list{U"sll", {{U"sll", -0.5}, {U"slt", -3.0}}};
  ResourceBundle bundle;
  auto lex = std::make_shared<Lexicon>();
  lex->Add("slt", {"salut", Generator::kSkeleton, 100});
  bundle.lexicon = lex;
  EXPECT_EQ(Decode(list, bundle), U"slt");
  // With a bonus too small to cover the gap the channel wins:
  // -0.5 > -3.0 + 1.0 + log(1).
  lex = std::make_shared<Lexicon>();
  lex->Add("slt", {"salut", Generator::kSkeleton, 1});
  bundle.lexicon = lex;
  DecodeOptions weak;
  weak.membership_bonus = 1.0;
  EXPECT_EQ(Decode(list, bundle, weak), U"sll");
}

TEST(DecodeTest, AcceptorRejectionsCostTheRejectScore) {
  ResourceBundle bundle;
  bundle.rebus = std::make_shared<RebusModel>();
  const ResourceScores s = ScoreResources(U"2m1", bundle);
  EXPECT_NEAR(s.rebus, std::log(0.3 * 0.1 * 0.3 * 0.3), 1e-12);
  bundle.rebus.reset();
  bundle.skeletons = std::make_shared<SkeletonAcceptorIndex>(
      FrequencyWordList({{"salut", 1, ""}}));
  EXPECT_EQ(ScoreResources(U"xyz", bundle).skeleton, DecodeOptions{}.reject_score);
  EXPECT_LT(ScoreResources(U"slt", bundle).skeleton, 0.0);
  EXPECT_GT(ScoreResources(U"slt", bundle).skeleton,
            DecodeOptions{}.reject_score);
}

TEST(DecodeTest, AddingTheTruthNeverHurtsAnInstance) {
  const ConfusionModel noisy = ConfusionModel::Default().Scaled(3.0);
  const ResourceBundle empty;
  for (std::size_t i = 0; i < SmallWords().size(); ++i) {
    const std::u32string word = Utf8ToU32(SmallWords().entries()[i].word);
    Rng rng = Rng::ForItem(3, i);
    const CandidateList list = Corrupt(word, noisy, rng);
    ResourceBundle with_truth;
    auto lex = std::make_shared<Lexicon>();
    lex->Add(U32ToUtf8(word), {"w", Generator::kSkeleton, 1});
    with_truth.lexicon = lex;
    EXPECT_GE(EditCost(word, Decode(list, with_truth)).tr,
              EditCost(word, Decode(list, empty)).tr)
        << U32ToUtf8(word);
  }
}

TEST(SkeletonAcceptorIndexTest, ScoresAcrossWords) {
  const SkeletonAcceptorIndex index(
      FrequencyWordList({{"salut", 1, ""}, {"bonjour", 1, ""}, {"eau", 1, ""}}));
  EXPECT_EQ(index.size(), 3u);
  EXPECT_TRUE(index.Score(U"slt").has_value());
  EXPECT_TRUE(index.Score(U"bjour").has_value());
  EXPECT_FALSE(index.Score(U"qqq").has_value());
  EXPECT_FALSE(index.Score(U"").has_value());
}

TEST(CorpusTest, ParseAndWrite) {
  std::istringstream in("# corpus\nskeleton\tslt\tsalut\nrebus\t2m1\n");
  const auto corpus = ParseCorpus(in);
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus[0], (CorpusItem{Category::kSkeleton, U"slt", U"salut"}));
  EXPECT_EQ(corpus[1], (CorpusItem{Category::kRebus, U"2m1", U""}));
  std::ostringstream out;
  WriteCorpus(out, corpus);
  EXPECT_EQ(out.str(), "skeleton\tslt\tsalut\nrebus\t2m1\n");
}

TEST(CorpusTest, ParseErrors) {
  const auto line_of = [](std::string text) -> std::size_t {
    std::istringstream in(text);
    try {
      ParseCorpus(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("skeleton\tslt\nfoo\tbar\n"), 2u);
  EXPECT_EQ(line_of("skeleton\n"), 1u);
  EXPECT_EQ(line_of("divers\t \n"), 1u);
}

TEST(CorpusTest, GeneratedCorpusIsDeterministicAndBalanced) {
  const auto a = GenerateCorpus(SmallWords(), 400, 7);
  const auto b = GenerateCorpus(SmallWords(), 400, 7);
  EXPECT_EQ(a, b);
  EXPECT_NE(GenerateCorpus(SmallWords(), 400, 8), a);
  std::map<Category, int> counts;
  for (const CorpusItem& item : a) {
    ++counts[item.category];
    EXPECT_FALSE(item.label.empty());
    if (item.category == Category::kSkeleton) {
      EXPECT_EQ(Skeletonize(item.source).skeleton(), item.label);
    }
    if (item.category == Category::kPhonetic) {
      EXPECT_TRUE(Phonetize(item.source).Contains(item.label));
    }
  }
  for (Category c : kCategories) EXPECT_EQ(counts[c], 100);
}

TEST(EvaluateTest, ZeroNoiseGivesPerfectScores) {
  const auto corpus = GenerateCorpus(SmallWords(), 200, 1);
  const ConfusionModel silent = ConfusionModel::Default().Scaled(0.0);
  const std::vector<ResourceBundle> bundles = {
      ResourceBundle{.name = "baseline"}, MakeDevelopedBundle(SmallWords()),
      MakeOptimalBundle(corpus)};
  const EvaluationTable table = Evaluate(corpus, silent, bundles);
  ASSERT_EQ(table.categories.size(), 4u);
  for (const auto& row : table.tr) {
    for (double tr : row) EXPECT_EQ(tr, 100.0);
  }
  for (double tr : table.overall) EXPECT_EQ(tr, 100.0);
}

TEST(EvaluateTest, OutputIsDeterministic) {
  const auto corpus = GenerateCorpus(SmallWords(), 200, 1);
  ConfusionModel noisy = ConfusionModel::Default().Scaled(2.0);
  noisy.seed = 4;
  const std::vector<ResourceBundle> bundles = {
      ResourceBundle{.name = "baseline"}, MakeOptimalBundle(corpus)};
  std::ostringstream a;
  std::ostringstream b;
  Evaluate(corpus, noisy, bundles).WriteTsv(a);
  Evaluate(corpus, noisy, bundles).WriteTsv(b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')),
            "category\twords\tchars\tbaseline\toptimal");
}

TEST(EvaluateTest, Errors) {
  const std::vector<ResourceBundle> bundles = {ResourceBundle{}};
  EXPECT_THROW(Evaluate({}, ConfusionModel::Default(), bundles), Error);
  const std::vector<CorpusItem> corpus = {{Category::kDivers, U"a", U""}};
  EXPECT_THROW(Evaluate(corpus, ConfusionModel::Default(), {}), Error);
}

TEST(EvaluationTableTest, ErrorReductionArithmetic) {
  EvaluationTable t;
  t.bundle_names = {"baseline", "developed"};
  t.categories = {Category::kSkeleton};
  t.stats = {{10, 30}};
  t.tr = {{90.0, 96.0}};
  t.overall = {90.0, 96.0};
  EXPECT_DOUBLE_EQ(t.ErrorReduction(0, 1), 0.6);
  EXPECT_DOUBLE_EQ(t.OverallErrorReduction(1), 0.6);
  std::ostringstream out;
  t.WriteSummary(out);
  EXPECT_NE(out.str().find("60.0% of initial errors corrected"),
            std::string::npos);
}

TEST(CategoryTest, Names) {
  for (Category c : kCategories) {
    EXPECT_EQ(CategoryFromName(CategoryName(c)), c);
  }
  EXPECT_EQ(CategoryFromName("other"), std::nullopt);
}

}  // namespace
}  // namespace mimema
