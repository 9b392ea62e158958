#include "lbpe/vocabulary.hpp"

#include <algorithm>

#include "lbpe/span_index.hpp"
#include "lbpe/utf8.hpp"

namespace lbpe {

const char* to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kEmptyPiece:
      return "empty-piece";
    case Violation::Kind::kDuplicatePiece:
      return "duplicate-piece";
    case Violation::Kind::kNonContiguousRank:
      return "non-contiguous-rank";
    case Violation::Kind::kMaxLengthMismatch:
      return "max-length-mismatch";
    case Violation::Kind::kNotDecomposable:
      return "not-decomposable";
    case Violation::Kind::kUnitAfterMerged:
      return "unit-after-merged";
  }
  return "unknown";
}

std::string describe(const Violation& v) {
  std::string out = to_string(v.kind);
  if (!v.tokens.empty()) {
    out += " [";
    for (std::size_t i = 0; i < v.tokens.size(); ++i) {
      if (i != 0) out += ",";
      out += std::to_string(v.tokens[i]);
    }
    out += "]";
  }
  if (!v.detail.empty()) {
    out += ": ";
    out += v.detail;
  }
  return out;
}

Vocabulary::Vocabulary() { build_index(); }

Vocabulary Vocabulary::from_pieces(const std::vector<std::string>& pieces,
                                   PreTokenizerConfig pretokenizer,
                                   VocabMetadata metadata) {
  Vocabulary v;
  v.tokens_.reserve(pieces.size());
  for (const auto& p : pieces) {
    const auto id = static_cast<TokenId>(v.tokens_.size());
    const auto len = static_cast<std::uint32_t>(utf8::length(p));
    v.tokens_.push_back({id, p, len});
    v.max_token_length_ = std::max(v.max_token_length_, len);
  }
  v.pretokenizer_ = pretokenizer;
  v.metadata_ = std::move(metadata);
  v.build_index();
  return v;
}

Vocabulary Vocabulary::from_raw(std::vector<Token> tokens,
                                std::uint32_t declared_max_token_length,
                                PreTokenizerConfig pretokenizer,
                                VocabMetadata metadata) {
  Vocabulary v;
  v.tokens_ = std::move(tokens);
  for (auto& t : v.tokens_) {
    t.length = static_cast<std::uint32_t>(utf8::length(t.piece));
  }
  v.max_token_length_ = declared_max_token_length;
  v.pretokenizer_ = pretokenizer;
  v.metadata_ = std::move(metadata);
  v.build_index();
  return v;
}

void Vocabulary::build_index() {
  piece_index_.clear();
  piece_index_.reserve(tokens_.size());
  for (std::size_t rank = 0; rank < tokens_.size(); ++rank) {
    piece_index_.emplace(tokens_[rank].piece, static_cast<TokenId>(rank));
  }
  span_trie_ = std::make_shared<const SpanTrie>(*this);
  pair_table_ = std::make_shared<const PairTable>(*this);
}

std::optional<TokenId> Vocabulary::rank_of(std::string_view piece) const {
  auto it = piece_index_.find(piece);
  if (it == piece_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<TokenId> Vocabulary::unit_alphabet() const {
  std::vector<TokenId> out;
  for (std::size_t rank = 0; rank < tokens_.size(); ++rank) {
    if (tokens_[rank].length == 1) out.push_back(static_cast<TokenId>(rank));
  }
  return out;
}

bool Vocabulary::operator==(const Vocabulary& other) const {
  return tokens_ == other.tokens_ &&
         max_token_length_ == other.max_token_length_ &&
         pretokenizer_ == other.pretokenizer_ && metadata_ == other.metadata_;
}

std::vector<Violation> validate(const Vocabulary& vocab) {
  using Kind = Violation::Kind;
  std::vector<Violation> out;
  const auto& tokens = vocab.tokens();

  for (std::size_t rank = 0; rank < tokens.size(); ++rank) {
    const auto r = static_cast<TokenId>(rank);
    if (tokens[rank].piece.empty()) {
      out.push_back({Kind::kEmptyPiece, {r}, "token has an empty piece"});
    }
    if (tokens[rank].id != r) {
      out.push_back({Kind::kNonContiguousRank,
                     {r},
                     "stored id " + std::to_string(tokens[rank].id) +
                         " at rank " + std::to_string(rank)});
    }
    if (const auto first = vocab.rank_of(tokens[rank].piece);
        first && *first != r) {
      out.push_back({Kind::kDuplicatePiece,
                     {*first, r},
                     "piece \"" + tokens[rank].piece + "\" appears twice"});
    }
  }

  std::uint32_t longest = 0;
  for (const auto& t : tokens) longest = std::max(longest, t.length);
  if (longest != vocab.max_token_length() || vocab.max_token_length() < 1) {
    out.push_back({Kind::kMaxLengthMismatch,
                   {},
                   "declared " + std::to_string(vocab.max_token_length()) +
                       ", longest piece has " + std::to_string(longest)});
  }

  for (std::size_t rank = 0; rank < tokens.size(); ++rank) {
    const auto& t = tokens[rank];
    if (t.length < 2) continue;
    const auto offs = utf8::offsets(t.piece);
    bool found = false;
    for (std::size_t k = 1; k + 1 < offs.size() && !found; ++k) {
      const std::string_view piece = t.piece;
      found = vocab.rank_of(piece.substr(0, offs[k])).has_value() &&
              vocab.rank_of(piece.substr(offs[k])).has_value();
    }
    if (!found) {
      out.push_back({Kind::kNotDecomposable,
                     {static_cast<TokenId>(rank)},
                     "\"" + t.piece + "\" is not a concatenation of two "
                                      "vocabulary pieces"});
    }
  }

  // Every unit must rank below the first multi-scalar token.
  std::optional<TokenId> first_merged;
  for (std::size_t rank = 0; rank < tokens.size(); ++rank) {
    const auto r = static_cast<TokenId>(rank);
    if (tokens[rank].length > 1 && !first_merged) first_merged = r;
    if (tokens[rank].length == 1 && first_merged) {
      out.push_back({Kind::kUnitAfterMerged,
                     {*first_merged, r},
                     "unit \"" + tokens[rank].piece + "\" ranked after \"" +
                         tokens[*first_merged].piece + "\""});
    }
  }
  return out;
}

}  // namespace lbpe
