#include "mimema/textmodel.h"

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "mimema/error.h"
#include "mimema/lexicon.h"
#include "mimema/utf8.h"
#include "testing/oracles.h"

namespace mimema {
namespace {

std::vector<CharClass> Classes(std::u32string_view word) {
  std::vector<CharClass> out;
  for (const FrenchChar& c : Classify(word)) out.push_back(c.klass);
  return out;
}

TEST(ClassifyTest, AccentedVowels) {
  const auto chars = Classify(U"été");
  ASSERT_EQ(chars.size(), 3u);
  EXPECT_EQ(chars[0], (FrenchChar{U'é', CharClass::kVowel, U'e'}));
  EXPECT_EQ(chars[1], (FrenchChar{U't', CharClass::kConsonant, U't'}));
  EXPECT_EQ(chars[2], (FrenchChar{U'é', CharClass::kVowel, U'e'}));
}

TEST(ClassifyTest, RebusForms) {
  using C = CharClass;
  EXPECT_EQ(Classes(U"2m1"),
            (std::vector<C>{C::kDigit, C::kConsonant, C::kDigit}));
  EXPECT_EQ(Classes(U"a+"), (std::vector<C>{C::kVowel, C::kSymbol}));
}

TEST(ClassifyTest, SeparatorsAndUnknownLetters) {
  using C = CharClass;
  EXPECT_EQ(Classes(U"a b\tc"),
            (std::vector<C>{C::kVowel, C::kSeparator, C::kConsonant,
                            C::kSeparator, C::kConsonant}));
  EXPECT_EQ(ClassOf(U'ß'), C::kConsonant);
  EXPECT_EQ(ClassOf(U'y'), C::kVowel);
  EXPECT_EQ(ClassOf(U'ÿ'), C::kVowel);
}

TEST(ClassifyTest, EveryAccentedVowelIsAVowel) {
  for (char32_t c : std::u32string(U"éèêàâîôûùëïüäöÿ")) {
    EXPECT_EQ(ClassOf(c), CharClass::kVowel) << U32ToUtf8(c);
  }
}

TEST(ClassifyTest, BaseIsIdempotentAndPreservesClass) {
  for (char32_t c = 0x20; c < 0x180; ++c) {
    const char32_t base = BaseOf(c);
    EXPECT_EQ(BaseOf(base), base) << static_cast<unsigned>(c);
    EXPECT_EQ(ClassOf(base), ClassOf(c)) << static_cast<unsigned>(c);
  }
}

TEST(StripDiacriticsTest, Examples) {
  EXPECT_EQ(StripDiacritics(U"ça"), U"ca");
  EXPECT_EQ(StripDiacritics(U"abc"), U"abc");
  EXPECT_EQ(StripDiacritics(U"nété"), U"nete");
  EXPECT_EQ(StripDiacritics(U""), U"");
}

TEST(StripDiacriticsTest, MatchesHandBuiltTable) {
  const std::u32string accented = U"àâäçéèêëîïôöùûüÿ";
  const std::u32string plain = U"aaaceeeeiioouuuy";
  EXPECT_EQ(StripDiacritics(accented), plain);
  EXPECT_EQ(StripDiacritics(U"ÀÇÉ"), U"ACE");
}

TEST(SyllabifyTest, Examples) {
  EXPECT_EQ(Syllabify(U"indépendance").Join(), U"in·dé·pen·dan·ce");
  EXPECT_EQ(Syllabify(U"a").Join(), U"a");
  EXPECT_EQ(Syllabify(U"devant").Join(), U"de·vant");
  EXPECT_EQ(Syllabify(U"toujours").Join(), U"tou·jours");
  EXPECT_EQ(Syllabify(U"montrer").Join(), U"mon·trer");
  EXPECT_EQ(Syllabify(U"slt").Join(), U"slt");
}

TEST(SyllabifyTest, EmptyTokenIsAnError) {
  try {
    Syllabify(U"");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "empty token");
  }
}

TEST(SyllabifyTest, RolesFollowSyllableStructure) {
  const SyllabifiedWord w = Syllabify(U"montrer");  // mon·trer
  EXPECT_EQ(w.RoleAt(0).part, SyllablePart::kOnset);
  EXPECT_EQ(w.RoleAt(1).part, SyllablePart::kNucleus);
  EXPECT_EQ(w.RoleAt(2).part, SyllablePart::kCoda);
  EXPECT_EQ(w.RoleAt(4).part, SyllablePart::kOnset);
  EXPECT_EQ(w.RoleAt(4).offset, 1u);
  EXPECT_EQ(w.RoleAt(4).syllable, 1u);
}

TEST(SyllabifyTest, InvariantsOverTheBundledWordList) {
  const FrequencyWordList words =
      FrequencyWordList::Load(testing::DataPath("french_words.tsv"));
  for (const WordFrequency& wf : words.entries()) {
    const std::u32string word = Utf8ToU32(wf.word);
    const SyllabifiedWord s = Syllabify(word);
    std::u32string joined;
    std::size_t expected_begin = 0;
    bool has_vowel = false;
    for (char32_t c : word) has_vowel |= IsVowel(c);
    for (std::size_t i = 0; i < s.syllables().size(); ++i) {
      const SyllableRange& r = s.syllables()[i];
      EXPECT_EQ(r.begin, expected_begin) << wf.word;
      EXPECT_LT(r.begin, r.end) << wf.word;
      expected_begin = r.end;
      const std::u32string syl = s.Syllable(i);
      joined += syl;
      if (has_vowel) {
        bool syl_vowel = false;
        for (char32_t c : syl) syl_vowel |= IsVowel(c);
        EXPECT_TRUE(syl_vowel) << wf.word;
      }
    }
    EXPECT_EQ(joined, word) << wf.word;
    if (!has_vowel) EXPECT_EQ(s.syllables().size(), 1u) << wf.word;
    EXPECT_EQ(Syllabify(word).syllables(), s.syllables());
  }
}

TEST(OnsetSetTest, DataFileMatchesBuiltIn) {
  EXPECT_EQ(OnsetSet::Load(testing::DataPath("onsets.txt")).onsets(),
            OnsetSet::Default().onsets());
}

TEST(OnsetSetTest, ParseReportsLineNumbers) {
  std::istringstream in("# clusters\nbl\n\nb l\n");
  try {
    OnsetSet::Parse(in);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(OnsetSetTest, CustomOnsetsChangeSegmentation) {
  std::istringstream in("c\nd\nm\nn\np\nr\nt\n");
  const OnsetSet minimal = OnsetSet::Parse(in);
  // Without "tr" as an onset the cluster splits between t and r.
  EXPECT_EQ(Syllabify(U"montrer", minimal).Join(), U"mont·rer");
}

}  // namespace
}  // namespace mimema
