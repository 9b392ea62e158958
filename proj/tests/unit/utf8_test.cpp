#include <gtest/gtest.h>

#include "lbpe/unicode.hpp"
#include "lbpe/utf8.hpp"

using namespace lbpe;

TEST(Utf8, DecodeAndEncodeRoundTrip) {
  std::string s = "a\xC3\xA9\xE2\x90\xA3\xF0\x9F\x98\x80";  // a é ␣ 😀
  auto r = utf8::decode(s);
  EXPECT_EQ(r.invalid_sequences, 0u);
  EXPECT_EQ(r.codepoints, (std::u32string{U'a', 0xE9, 0x2423, 0x1F600}));
  EXPECT_EQ(utf8::encode(r.codepoints), s);
  EXPECT_EQ(utf8::length(s), 4u);
  EXPECT_EQ(utf8::offsets(s), (std::vector<std::uint32_t>{0, 1, 3, 6, 10}));
}

TEST(Utf8, InvalidSequencesAreReplaced) {
  std::size_t invalid = 0;
  std::string out = utf8::sanitize("a\xFF" "b\xE2\x90" "c", &invalid);
  EXPECT_EQ(invalid, 2u);
  EXPECT_EQ(out, "a\xEF\xBF\xBD" "b\xEF\xBF\xBD" "c");
  EXPECT_TRUE(utf8::is_valid(out));
  EXPECT_FALSE(utf8::is_valid("\xC0\x80"));
  EXPECT_FALSE(utf8::is_valid("\xED\xA0\x80"));  // surrogate
  EXPECT_FALSE(utf8::is_valid("\xF4\x90\x80\x80"));  // above U+10FFFF
}

TEST(Utf8, EmptyInput) {
  EXPECT_TRUE(utf8::decode("").codepoints.empty());
  EXPECT_EQ(utf8::offsets(""), std::vector<std::uint32_t>{0});
}

TEST(Unicode, Classes) {
  EXPECT_EQ(classify(U'a'), CharClass::kLetter);
  EXPECT_EQ(classify(0x00E9), CharClass::kLetter);
  EXPECT_EQ(classify(0x4E2D), CharClass::kLetter);  // 中
  EXPECT_EQ(classify(0x02B0), CharClass::kLetter);  // modifier letter
  EXPECT_EQ(classify(U'7'), CharClass::kDigit);
  EXPECT_EQ(classify(0x0663), CharClass::kDigit);  // Arabic-Indic three
  EXPECT_EQ(classify(0x00B2), CharClass::kOther);  // superscript two is No
  EXPECT_EQ(classify(U' '), CharClass::kWhitespace);
  EXPECT_EQ(classify(U'\n'), CharClass::kWhitespace);
  EXPECT_EQ(classify(0x3000), CharClass::kWhitespace);
  EXPECT_EQ(classify(0x00A0), CharClass::kWhitespace);
  EXPECT_EQ(classify(U','), CharClass::kOther);
  EXPECT_EQ(classify(0x0301), CharClass::kOther);  // combining mark
  EXPECT_EQ(classify(0x1F600), CharClass::kOther);
}
