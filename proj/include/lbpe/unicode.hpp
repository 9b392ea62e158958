#pragma once

#include <cstdint>

namespace lbpe {

// The four character classes used by pre-tokenization.
enum class CharClass : std::uint8_t { kLetter, kDigit, kWhitespace, kOther };

// Letter = general category L*, Digit = Nd, Whitespace = White_Space
// property, Other = everything else. Whitespace wins over the others.
CharClass classify(char32_t cp);

const char* to_string(CharClass c);

}  // namespace lbpe
