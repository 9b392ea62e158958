#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lbpe {

struct PreTokenizerConfig {
  // Every Digit-class scalar becomes its own pretoken.
  bool split_digits = true;
  // A single U+0020 directly before a Letter run is fused onto that run.
  bool attach_leading_space = true;

  bool operator==(const PreTokenizerConfig&) const = default;
};

// A maximal character run. Merges never cross a pretoken boundary.
struct PreToken {
  std::string text;
  // [char_begin, char_end) in scalar offsets of the source text.
  std::size_t char_begin = 0;
  std::size_t char_end = 0;

  bool operator==(const PreToken&) const = default;
};

// Splits `text` (well-formed UTF-8) at character-class boundaries.
//
// Boundaries fall at every class change, except that one space fuses with a
// following Letter run when attach_leading_space is set. A space before a
// Digit or Other run stays a separate pretoken. Whitespace runs stay together
// apart from the fusing space, and newlines never fuse.
std::vector<PreToken> pretokenize(std::string_view text,
                                  const PreTokenizerConfig& config = {});

// Same boundaries without materializing PreToken values; `fn` receives each
// pretoken's text as a view into `text`.
template <typename Fn>
void for_each_pretoken(std::string_view text, const PreTokenizerConfig& config,
                       Fn&& fn);

namespace detail {
// Byte lengths of consecutive pretokens covering `text`.
std::vector<std::size_t> pretoken_lengths(std::string_view text,
                                          const PreTokenizerConfig& config);
}  // namespace detail

template <typename Fn>
void for_each_pretoken(std::string_view text, const PreTokenizerConfig& config,
                       Fn&& fn) {
  std::size_t pos = 0;
  for (std::size_t len : detail::pretoken_lengths(text, config)) {
    fn(text.substr(pos, len));
    pos += len;
  }
}

}  // namespace lbpe
