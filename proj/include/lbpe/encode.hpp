#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lbpe/vocabulary.hpp"

namespace lbpe {

enum class EncodeMode { kBpeRankFirst, kLbpeLongestFirst };

// "bpe" | "lbpe"
const char* to_string(EncodeMode mode);
std::optional<EncodeMode> parse_mode(std::string_view name);

// A pretoken split into single-scalar unit tokens.
class UnitSequence {
 public:
  UnitSequence() : offsets_{0} {}
  // `text` must be well-formed UTF-8.
  explicit UnitSequence(std::string_view text);

  std::size_t size() const noexcept { return codepoints_.size(); }
  bool empty() const noexcept { return codepoints_.empty(); }
  const std::string& text() const noexcept { return text_; }
  const std::u32string& codepoints() const noexcept { return codepoints_; }

  std::string_view unit(std::size_t i) const { return span(i, 1); }
  // Concatenation of units [begin, begin + count).
  std::string_view span(std::size_t begin, std::size_t count) const {
    return std::string_view(text_).substr(
        offsets_[begin], offsets_[begin + count] - offsets_[begin]);
  }

 private:
  std::string text_;
  std::u32string codepoints_;
  std::vector<std::uint32_t> offsets_;
};

// Final token representation. For unknown tokens (id == vocab.unknown_id())
// pieces[k] holds the source text the token stands for.
struct Encoding {
  std::vector<TokenId> ids;
  std::vector<std::string> pieces;
  std::size_t source_char_count = 0;
  std::size_t source_byte_count = 0;

  std::size_t size() const noexcept { return ids.size(); }
  bool empty() const noexcept { return ids.empty(); }
  void append(const Encoding& other);

  bool operator==(const Encoding&) const = default;
};

// One marking step of the long-token-first encoder.
struct LbpeMark {
  std::uint32_t begin = 0;
  std::uint32_t length = 0;
  TokenId id = 0;

  bool operator==(const LbpeMark&) const = default;
};

struct LbpeTrace {
  std::vector<LbpeMark> marks;  // in marking order
  std::uint64_t window_tests = 0;
};

// One merge of the rank-first encoder: the pair at `position` (index into the
// current token sequence) became token `merged`.
struct BpeMergeStep {
  std::size_t position = 0;
  TokenId merged = 0;

  bool operator==(const BpeMergeStep&) const = default;
};

// Rank-first BPE: repeatedly merge the adjacent pair whose concatenation is
// the lowest-ranked vocabulary token, leftmost first on ties. Unknown units
// never merge; consecutive unknown units collapse to one unknown token.
Encoding encode_bpe(const UnitSequence& units, const Vocabulary& vocab,
                    std::vector<BpeMergeStep>* steps = nullptr);

// Long-token-first LBPE: for window length l = max_token_length .. 1 and
// i = 0 .. |units| - l, mark units[i, i+l) as a token if the span is in the
// vocabulary and none of its units is marked yet. Tokens are then read off in
// position order; unmarked runs become unknown tokens.
Encoding encode_lbpe(const UnitSequence& units, const Vocabulary& vocab,
                     LbpeTrace* trace = nullptr);

Encoding encode_units(const UnitSequence& units, const Vocabulary& vocab,
                      EncodeMode mode);

// Pre-tokenizes with the vocabulary's config and encodes each pretoken.
// Invalid UTF-8 is replaced with U+FFFD first.
Encoding encode_text(std::string_view text, const Vocabulary& vocab,
                     EncodeMode mode);

// Throws Error(kInvalidTokenId) for ids above the unknown id.
std::string decode(const Encoding& encoding, const Vocabulary& vocab);

// Reference implementations. They follow the definitions literally and are
// only meant for tests, golden generation and the scaling benchmark.
enum class NaiveScan {
  // Recompute every adjacent pair's rank from the pieces on every step.
  kFullRescan,
  // Keep per-position pair ranks and refresh the two neighbours of each
  // merge; the argmin is still a linear scan over all pairs.
  kCachedPairRanks,
};

Encoding encode_bpe_naive(const UnitSequence& units, const Vocabulary& vocab,
                          std::vector<BpeMergeStep>* steps = nullptr,
                          NaiveScan scan = NaiveScan::kFullRescan);

Encoding encode_lbpe_naive(const UnitSequence& units, const Vocabulary& vocab,
                           LbpeTrace* trace = nullptr);

}  // namespace lbpe
