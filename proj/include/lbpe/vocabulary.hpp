#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lbpe/pretokenize.hpp"

namespace lbpe {

using TokenId = std::uint32_t;
class SpanTrie;
class PairTable;

struct Token {
  TokenId id = 0;
  std::string piece;        // UTF-8
  std::uint32_t length = 0;  // Unicode scalars in piece

  bool operator==(const Token&) const = default;
};

// Provenance carried alongside a vocabulary. Not used by encoding.
struct VocabMetadata {
  std::uint64_t target_vocab_size = 0;
  std::uint64_t min_pair_frequency = 0;
  std::uint64_t merges = 0;
  std::uint64_t documents = 0;
  std::string corpus_fingerprint;

  bool operator==(const VocabMetadata&) const = default;
};

struct Violation {
  enum class Kind {
    kEmptyPiece,
    kDuplicatePiece,
    kNonContiguousRank,
    kMaxLengthMismatch,
    kNotDecomposable,
    kUnitAfterMerged,
  };
  Kind kind;
  std::vector<TokenId> tokens;  // offending positions
  std::string detail;
};

const char* to_string(Violation::Kind kind);
std::string describe(const Violation& v);

namespace detail {
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};
}  // namespace detail

// Ordered token set. A token's rank is its position in tokens(); lower rank
// means the token was added earlier. Immutable once built.
//
// The unknown token is not ranked: its id is size().
class Vocabulary {
 public:
  Vocabulary();

  // Ranks follow the order of `pieces`.
  static Vocabulary from_pieces(const std::vector<std::string>& pieces,
                                PreTokenizerConfig pretokenizer = {},
                                VocabMetadata metadata = {});

  // Keeps stored ids and the declared max length as given so validate() can
  // report on them. Used by the file loader.
  static Vocabulary from_raw(std::vector<Token> tokens,
                             std::uint32_t declared_max_token_length,
                             PreTokenizerConfig pretokenizer = {},
                             VocabMetadata metadata = {});

  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }
  const std::vector<Token>& tokens() const noexcept { return tokens_; }
  const Token& token(TokenId rank) const { return tokens_.at(rank); }
  const std::string& piece(TokenId rank) const { return tokens_.at(rank).piece; }

  // Rank of `piece`, or nullopt. For duplicated pieces the lowest rank wins.
  std::optional<TokenId> rank_of(std::string_view piece) const;

  std::uint32_t max_token_length() const noexcept { return max_token_length_; }
  TokenId unknown_id() const noexcept {
    return static_cast<TokenId>(tokens_.size());
  }
  bool is_known(TokenId id) const noexcept { return id < tokens_.size(); }

  // Ranks of single-scalar tokens, ascending.
  std::vector<TokenId> unit_alphabet() const;

  const PreTokenizerConfig& pretokenizer() const noexcept {
    return pretokenizer_;
  }
  const VocabMetadata& metadata() const noexcept { return metadata_; }

  // Lookup structures used by the optimized encoders. Built once with the
  // vocabulary and shared by copies.
  const SpanTrie& span_trie() const { return *span_trie_; }
  const PairTable& pair_table() const { return *pair_table_; }

  bool operator==(const Vocabulary& other) const;

 private:
  void build_index();

  std::vector<Token> tokens_;
  std::unordered_map<std::string, TokenId, detail::StringHash, std::equal_to<>>
      piece_index_;
  std::shared_ptr<const SpanTrie> span_trie_;
  std::shared_ptr<const PairTable> pair_table_;
  std::uint32_t max_token_length_ = 0;
  PreTokenizerConfig pretokenizer_;
  VocabMetadata metadata_;
};

inline std::optional<TokenId> rank_of(const Vocabulary& vocab,
                                      std::string_view piece) {
  return vocab.rank_of(piece);
}

// Empty iff every vocabulary invariant holds: non-empty pieces, distinct
// pieces, ids equal to positions, max_token_length equal to the longest piece,
// every multi-scalar piece splits into two vocabulary pieces, and all
// single-scalar tokens rank below all multi-scalar tokens.
std::vector<Violation> validate(const Vocabulary& vocab);

}  // namespace lbpe
