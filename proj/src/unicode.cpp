#include "lbpe/unicode.hpp"

#include <algorithm>
#include <iterator>

namespace lbpe {
namespace {

struct CodepointRange {
  char32_t lo;
  char32_t hi;
};

#include "unicode_tables.inc"

template <std::size_t N>
bool in_ranges(const CodepointRange (&ranges)[N], char32_t cp) {
  auto it = std::upper_bound(
      std::begin(ranges), std::end(ranges), cp,
      [](char32_t value, const CodepointRange& r) { return value < r.lo; });
  if (it == std::begin(ranges)) return false;
  --it;
  return cp <= it->hi;
}

// Unicode PropList.txt, White_Space=yes.
bool is_white_space(char32_t cp) {
  if (cp >= 0x09 && cp <= 0x0D) return true;
  if (cp >= 0x2000 && cp <= 0x200A) return true;
  switch (cp) {
    case 0x20:
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return false;
  }
}

}  // namespace

CharClass classify(char32_t cp) {
  if (cp < 0x80) {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) {
      return CharClass::kLetter;
    }
    if (cp >= '0' && cp <= '9') return CharClass::kDigit;
    if (is_white_space(cp)) return CharClass::kWhitespace;
    return CharClass::kOther;
  }
  if (is_white_space(cp)) return CharClass::kWhitespace;
  if (in_ranges(kLetterRanges, cp)) return CharClass::kLetter;
  if (in_ranges(kDigitRanges, cp)) return CharClass::kDigit;
  return CharClass::kOther;
}

const char* to_string(CharClass c) {
  switch (c) {
    case CharClass::kLetter:
      return "Letter";
    case CharClass::kDigit:
      return "Digit";
    case CharClass::kWhitespace:
      return "Whitespace";
    case CharClass::kOther:
      return "Other";
  }
  return "Other";
}

}  // namespace lbpe
