#include "mimema/utf8.h"

#include <gtest/gtest.h>

#include "mimema/error.h"

namespace mimema {
namespace {

TEST(Utf8Test, RoundTripsMixedScripts) {
  const std::string text = "été ça 2m1 @+ œ €";
  EXPECT_EQ(U32ToUtf8(Utf8ToU32(text)), text);
  EXPECT_EQ(Utf8ToU32("é").size(), 1u);
  EXPECT_EQ(Utf8ToU32("€").size(), 1u);
}

TEST(Utf8Test, RejectsMalformedInput) {
  EXPECT_THROW(Utf8ToU32("\xC3"), Error);
  EXPECT_THROW(Utf8ToU32("\xFF"), Error);
  EXPECT_THROW(Utf8ToU32("a\xE2\x82"), Error);
}

TEST(Utf8Test, LowercasesFrenchLetters) {
  EXPECT_EQ(ToLower(U"ÉTÉ Ça"), U"été ça");
  EXPECT_EQ(ToLower(U'Ÿ'), U'ÿ');
  EXPECT_EQ(ToLower(U'Œ'), U'œ');
  EXPECT_EQ(ToLower(U'×'), U'×');
  EXPECT_EQ(ToLower(U'2'), U'2');
}

}  // namespace
}  // namespace mimema
