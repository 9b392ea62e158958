#include "lbpe/span_index.hpp"

#include "lbpe/utf8.hpp"
#include "lbpe/vocabulary.hpp"

namespace lbpe {

SpanTrie::SpanTrie(const Vocabulary& vocab) : terminal_(1, kNone) {
  for (std::size_t rank = 0; rank < vocab.size(); ++rank) {
    const auto& piece = vocab.piece(static_cast<TokenId>(rank));
    if (piece.empty()) continue;
    std::uint32_t node = kRoot;
    for (char32_t cp : utf8::decode(piece).codepoints) {
      auto [it, inserted] = edges_.try_emplace(
          key(node, cp), static_cast<std::uint32_t>(terminal_.size()));
      if (inserted) terminal_.push_back(kNone);
      node = it->second;
    }
    // Duplicate pieces resolve to the lowest rank, matching rank_of().
    if (terminal_[node] == kNone) {
      terminal_[node] = static_cast<std::uint32_t>(rank);
    }
  }
}

PairTable::PairTable(const Vocabulary& vocab) {
  for (std::size_t rank = 0; rank < vocab.size(); ++rank) {
    const std::string_view piece = vocab.piece(static_cast<TokenId>(rank));
    if (vocab.rank_of(piece) != rank) continue;
    const auto offs = utf8::offsets(piece);
    for (std::size_t k = 1; k + 1 < offs.size(); ++k) {
      const auto left = vocab.rank_of(piece.substr(0, offs[k]));
      const auto right = vocab.rank_of(piece.substr(offs[k]));
      if (left && right) {
        pairs_.emplace(key(*left, *right), static_cast<TokenId>(rank));
      }
    }
  }
}

}  // namespace lbpe
