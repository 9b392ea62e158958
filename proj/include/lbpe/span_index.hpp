#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lbpe {

using TokenId = std::uint32_t;
class Vocabulary;

// Codepoint trie over every vocabulary piece. Walking it from a unit position
// yields all vocabulary spans starting there in one pass.
class SpanTrie {
 public:
  static constexpr std::uint32_t kRoot = 0;
  static constexpr std::uint32_t kNone = UINT32_MAX;

  SpanTrie() : terminal_(1, kNone) {}
  explicit SpanTrie(const Vocabulary& vocab);

  std::uint32_t child(std::uint32_t node, char32_t cp) const {
    auto it = edges_.find(key(node, cp));
    return it == edges_.end() ? kNone : it->second;
  }
  // Token ending at `node`, or kNone.
  std::uint32_t terminal(std::uint32_t node) const { return terminal_[node]; }
  std::size_t node_count() const { return terminal_.size(); }

 private:
  static std::uint64_t key(std::uint32_t node, char32_t cp) {
    return (static_cast<std::uint64_t>(node) << 21) | cp;
  }

  std::unordered_map<std::uint64_t, std::uint32_t> edges_;
  std::vector<std::uint32_t> terminal_;
};

// (left, right) -> rank of the vocabulary token whose piece is the
// concatenation of both pieces.
class PairTable {
 public:
  PairTable() = default;
  explicit PairTable(const Vocabulary& vocab);

  std::optional<TokenId> find(TokenId left, TokenId right) const {
    auto it = pairs_.find(key(left, right));
    if (it == pairs_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t size() const { return pairs_.size(); }

 private:
  static std::uint64_t key(TokenId l, TokenId r) {
    return (static_cast<std::uint64_t>(l) << 32) | r;
  }

  std::unordered_map<std::uint64_t, TokenId> pairs_;
};

}  // namespace lbpe
