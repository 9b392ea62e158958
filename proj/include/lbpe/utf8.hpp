#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lbpe::utf8 {

inline constexpr char32_t kReplacementChar = 0xFFFD;

struct DecodeResult {
  std::u32string codepoints;
  std::size_t invalid_sequences = 0;
};

// Decodes UTF-8, replacing every maximal invalid subsequence with U+FFFD.
DecodeResult decode(std::string_view bytes);

void append(std::string& out, char32_t cp);
std::string encode(std::u32string_view cps);

// Returns `bytes` with invalid sequences replaced. `invalid` (if non-null) is
// incremented once per replacement.
std::string sanitize(std::string_view bytes, std::size_t* invalid = nullptr);

bool is_valid(std::string_view bytes);

// Number of scalar values in well-formed UTF-8.
std::size_t length(std::string_view text);

// Byte offset of every scalar in well-formed UTF-8, plus a trailing
// text.size() entry.
std::vector<std::uint32_t> offsets(std::string_view text);

}  // namespace lbpe::utf8
