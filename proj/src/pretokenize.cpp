#include "lbpe/pretokenize.hpp"

#include "lbpe/unicode.hpp"
#include "lbpe/utf8.hpp"

namespace lbpe {
namespace {

struct Scalar {
  char32_t cp;
  std::size_t byte_begin;
  std::size_t byte_len;
  CharClass cls;
};

std::vector<Scalar> scan(std::string_view text) {
  std::vector<Scalar> out;
  out.reserve(text.size());
  const auto decoded = utf8::decode(text);
  std::size_t pos = 0;
  for (char32_t cp : decoded.codepoints) {
    const std::size_t len = cp < 0x80 ? 1 : cp < 0x800 ? 2 : cp < 0x10000 ? 3 : 4;
    out.push_back({cp, pos, len, classify(cp)});
    pos += len;
  }
  return out;
}

}  // namespace

namespace detail {

std::vector<std::size_t> pretoken_lengths(std::string_view text,
                                          const PreTokenizerConfig& config) {
  const auto scalars = scan(text);
  std::vector<std::size_t> lengths;
  const std::size_t n = scalars.size();
  std::size_t i = 0;
  while (i < n) {
    const std::size_t begin = i;
    const CharClass cls = scalars[i].cls;
    if (cls == CharClass::kDigit && config.split_digits) {
      ++i;
    } else if (cls == CharClass::kWhitespace) {
      std::size_t end = i;
      while (end < n && scalars[end].cls == CharClass::kWhitespace) ++end;
      // Leave a trailing space behind for the following Letter run.
      if (config.attach_leading_space && end < n &&
          scalars[end].cls == CharClass::kLetter &&
          scalars[end - 1].cp == U' ') {
        if (end - 1 == begin) {
          // The run is just the fusing space: take it with the letters.
          end = begin + 1;
          while (end < n && scalars[end].cls == CharClass::kLetter) ++end;
        } else {
          --end;
        }
      }
      i = end;
    } else {
      while (i < n && scalars[i].cls == cls) ++i;
    }
    std::size_t bytes = 0;
    for (std::size_t k = begin; k < i; ++k) bytes += scalars[k].byte_len;
    lengths.push_back(bytes);
  }
  return lengths;
}

}  // namespace detail

std::vector<PreToken> pretokenize(std::string_view text,
                                  const PreTokenizerConfig& config) {
  std::vector<PreToken> out;
  std::size_t char_pos = 0;
  for_each_pretoken(text, config, [&](std::string_view piece) {
    const std::size_t chars = utf8::length(piece);
    out.push_back({std::string(piece), char_pos, char_pos + chars});
    char_pos += chars;
  });
  return out;
}

}  // namespace lbpe
