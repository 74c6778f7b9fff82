#include "mimema/rebus.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "mimema/error.h"
#include "testing/oracles.h"

namespace mimema {
namespace {

bool HasDigitBigram(std::u32string_view form) {
  for (std::size_t i = 1; i < form.size(); ++i) {
    if (U'0' <= form[i - 1] && form[i - 1] <= U'9' && U'0' <= form[i] &&
        form[i] <= U'9') {
      return true;
    }
  }
  return false;
}

TEST(RebusModelTest, AcceptsAttestedForms) {
  const RebusModel model;
  for (std::u32string_view form :
       {U"2m1", U"a+", U"c", U"9", U"kfé", U"@+", U"mr6", U"a2m1"}) {
    EXPECT_TRUE(model.Score(form).has_value());
  }
}

TEST(RebusModelTest, SingletonBeatsRepetition) {
  const RebusModel model;
  EXPECT_GE(*model.Score(U"c"), *model.Score(U"cc"));
  EXPECT_GE(*model.Score(U"9"), *model.Score(U"99"));
}

TEST(RebusModelTest, HandComputedScores) {
  const RebusModel model;
  EXPECT_NEAR(*model.Score(U"c"), std::log(0.3 * 0.9), 1e-12);
  EXPECT_NEAR(*model.Score(U"2m1"), std::log(0.3 * 0.1 * 0.3 * 0.3), 1e-12);
  EXPECT_NEAR(*model.Score(U"21m"), std::log(0.3 * 0.1 * 0.02 * 0.3), 1e-12);
}

TEST(RebusModelTest, AdjacentDigitsScoreBelowEveryOtherArrangement) {
  const RebusModel model;
  std::u32string form = U"12m";
  std::sort(form.begin(), form.end());
  do {
    if (form == U"2m1") continue;
    if (HasDigitBigram(form)) {
      EXPECT_GT(*model.Score(U"2m1"), *model.Score(form));
    }
  } while (std::next_permutation(form.begin(), form.end()));
  EXPECT_GT(*model.Score(U"2m1"), *model.Score(U"21m"));
  EXPECT_GT(*model.Score(U"2m1"), *model.Score(U"m21"));
}

TEST(RebusModelTest, EmptyFormIsAnError) {
  try {
    RebusModel().Score(U"");
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "empty token");
  }
}

TEST(RebusModelTest, ViterbiMatchesBruteForce) {
  const RebusModel model;
  const std::u32string alphabet = U"a1+";
  // All forms up to length 5 over one letter, one digit and one symbol.
  std::vector<std::u32string> forms = {U""};
  for (int len = 1; len <= 5; ++len) {
    std::vector<std::u32string> next;
    for (const auto& f : forms) {
      for (char32_t c : alphabet) next.push_back(f + c);
    }
    for (const auto& f : next) {
      const auto expected = testing::BruteForceBestPath(model.acceptor(), f);
      ASSERT_TRUE(expected.has_value());
      EXPECT_NEAR(*model.Score(f), *expected, 1e-12);
    }
    forms = std::move(next);
  }
}

TEST(RebusModelPropertyTest, DigitBigramsHaveABetterPermutation) {
  const RebusModel model;
  std::mt19937 gen(3);
  const std::u32string letters = U"abcmkrt";
  const std::u32string digits = U"0123456789";
  for (int trial = 0; trial < 500; ++trial) {
    std::u32string form;
    const int num_letters = 1 + gen() % 3;
    const int num_digits = gen() % 3;
    for (int i = 0; i < num_letters; ++i) form += letters[gen() % letters.size()];
    for (int i = 0; i < num_digits; ++i) form += digits[gen() % digits.size()];
    std::shuffle(form.begin(), form.end(), gen);
    if (!HasDigitBigram(form)) continue;
    std::u32string perm = form;
    std::sort(perm.begin(), perm.end());
    bool better = false;
    do {
      if (!HasDigitBigram(perm) && *model.Score(perm) > *model.Score(form)) {
        better = true;
      }
    } while (!better && std::next_permutation(perm.begin(), perm.end()));
    EXPECT_TRUE(better);
  }
}

TEST(RebusModelPropertyTest, PureLetterScoresDecayWithLength) {
  const RebusModel model;
  std::u32string form;
  double previous = 0.0;
  for (int len = 1; len <= 12; ++len) {
    form += U"abcdefghijkl"[len - 1];
    const double score = *model.Score(form);
    EXPECT_LE(score, previous);
    previous = score;
  }
}

TEST(RebusModelTest, IdenticalParamsSerializeIdentically) {
  EXPECT_EQ(RebusModel().acceptor().Serialize(),
            RebusModel(RebusParams{}).acceptor().Serialize());
}

TEST(RebusParamsTest, ParseOverridesDefaults) {
  std::istringstream in(
      "# rebus\nsingleton_bonus = -0.2\ntransition.letter.digit = -1.5\n"
      "initial.symbol = -3\n");
  const RebusParams p = RebusParams::Parse(in);
  EXPECT_EQ(p.singleton_bonus, -0.2);
  EXPECT_EQ(p.Transition(RebusClass::kLetter, RebusClass::kDigit), -1.5);
  EXPECT_EQ(p.initial[2], -3.0);
  EXPECT_EQ(p.Transition(RebusClass::kDigit, RebusClass::kDigit),
            std::log(0.02));
  EXPECT_NO_THROW(RebusModel{p});
}

TEST(RebusParamsTest, ParseErrors) {
  const auto line_of = [](std::string text) -> std::size_t {
    std::istringstream in(text);
    try {
      RebusParams::Parse(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("\nfoo = 1\n"), 2u);
  EXPECT_EQ(line_of("initial.vowel = -1\n"), 1u);
  EXPECT_EQ(line_of("transition.letter = -1\n"), 1u);
  EXPECT_EQ(line_of("singleton_bonus = x\n"), 1u);
}

TEST(RebusModelTest, RejectsInvalidParameters) {
  const auto invalid = [](RebusParams p) {
    try {
      RebusModel m(p);
      return false;
    } catch (const Error& e) {
      return std::string(e.what()).rfind("invalid parameters", 0) == 0;
    }
  };
  RebusParams positive;
  positive.singleton_bonus = 0.1;
  EXPECT_TRUE(invalid(positive));
  RebusParams heavy;
  heavy.initial = {std::log(0.5), std::log(0.5), std::log(0.5)};
  EXPECT_TRUE(invalid(heavy));
  RebusParams mild_digits;
  mild_digits.digit_digit_penalty = std::log(0.3);
  EXPECT_TRUE(invalid(mild_digits));
  RebusParams overfull;
  overfull.transition[0] = {std::log(0.5), std::log(0.5), std::log(0.5)};
  EXPECT_TRUE(invalid(overfull));
}

}  // namespace
}  // namespace mimema
