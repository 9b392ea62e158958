#include "lbpe/encode.hpp"

#include <algorithm>
#include <queue>

#include "lbpe/error.hpp"
#include "lbpe/pretokenize.hpp"
#include "lbpe/span_index.hpp"
#include "lbpe/utf8.hpp"

namespace lbpe {

const char* to_string(EncodeMode mode) {
  return mode == EncodeMode::kBpeRankFirst ? "bpe" : "lbpe";
}

std::optional<EncodeMode> parse_mode(std::string_view name) {
  if (name == "bpe") return EncodeMode::kBpeRankFirst;
  if (name == "lbpe") return EncodeMode::kLbpeLongestFirst;
  return std::nullopt;
}

UnitSequence::UnitSequence(std::string_view text)
    : text_(text),
      codepoints_(utf8::decode(text).codepoints),
      offsets_(utf8::offsets(text)) {}

void Encoding::append(const Encoding& other) {
  ids.insert(ids.end(), other.ids.begin(), other.ids.end());
  pieces.insert(pieces.end(), other.pieces.begin(), other.pieces.end());
  source_char_count += other.source_char_count;
  source_byte_count += other.source_byte_count;
}

namespace {

constexpr std::int32_t kFree = -1;

Encoding start_encoding(const UnitSequence& units) {
  Encoding out;
  out.source_char_count = units.size();
  out.source_byte_count = units.text().size();
  return out;
}

// Emits one token per known segment and one unknown token per maximal run of
// unknown segments. Segments are given as (begin, length, id) in order.
void emit(Encoding& out, const UnitSequence& units, const Vocabulary& vocab,
          std::size_t begin, std::size_t length, TokenId id) {
  const TokenId unk = vocab.unknown_id();
  if (id == unk && !out.ids.empty() && out.ids.back() == unk) {
    out.pieces.back().append(units.span(begin, length));
    return;
  }
  out.ids.push_back(id);
  out.pieces.emplace_back(id == unk ? std::string(units.span(begin, length))
                                    : vocab.piece(id));
}

struct Symbol {
  TokenId id;
  std::int32_t prev;
  std::int32_t next;
  std::uint32_t begin;
  std::uint32_t length;
};

struct Candidate {
  TokenId rank;
  std::int32_t left;
  std::int32_t right;
  TokenId left_id;
  TokenId right_id;

  // Min-heap on (rank, left); left indices follow text order.
  bool operator>(const Candidate& o) const {
    return rank != o.rank ? rank > o.rank : left > o.left;
  }
};

}  // namespace

Encoding encode_bpe(const UnitSequence& units, const Vocabulary& vocab,
                    std::vector<BpeMergeStep>* steps) {
  Encoding out = start_encoding(units);
  const std::size_t n = units.size();
  if (n == 0) return out;
  const TokenId unk = vocab.unknown_id();
  const PairTable& pairs = vocab.pair_table();

  std::vector<Symbol> symbols(n);
  for (std::size_t i = 0; i < n; ++i) {
    symbols[i] = {vocab.rank_of(units.unit(i)).value_or(unk),
                  static_cast<std::int32_t>(i) - 1,
                  i + 1 < n ? static_cast<std::int32_t>(i + 1) : kFree,
                  static_cast<std::uint32_t>(i), 1};
  }

  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> heap;
  auto push = [&](std::int32_t left) {
    if (left == kFree) return;
    const std::int32_t right = symbols[left].next;
    if (right == kFree) return;
    const TokenId l = symbols[left].id;
    const TokenId r = symbols[right].id;
    if (l == unk || r == unk) return;
    if (auto merged = pairs.find(l, r)) heap.push({*merged, left, right, l, r});
  };
  for (std::size_t i = 0; i + 1 < n; ++i) push(static_cast<std::int32_t>(i));

  // Position of each live symbol in the current sequence, only needed for
  // tracing.
  auto position_of = [&](std::int32_t idx) {
    std::size_t pos = 0;
    for (std::int32_t p = symbols[idx].prev; p != kFree; p = symbols[p].prev) {
      ++pos;
    }
    return pos;
  };

  while (!heap.empty()) {
    const Candidate c = heap.top();
    heap.pop();
    Symbol& left = symbols[c.left];
    if (left.length == 0 || left.id != c.left_id || left.next != c.right ||
        symbols[c.right].id != c.right_id) {
      continue;
    }
    if (steps != nullptr) steps->push_back({position_of(c.left), c.rank});
    Symbol& right = symbols[c.right];
    left.id = c.rank;
    left.length += right.length;
    left.next = right.next;
    if (right.next != kFree) symbols[right.next].prev = c.left;
    right.length = 0;
    push(left.prev);
    push(c.left);
  }

  for (std::int32_t i = 0; i != kFree; i = symbols[i].next) {
    emit(out, units, vocab, symbols[i].begin, symbols[i].length, symbols[i].id);
  }
  return out;
}

Encoding encode_lbpe(const UnitSequence& units, const Vocabulary& vocab,
                     LbpeTrace* trace) {
  Encoding out = start_encoding(units);
  const std::size_t n = units.size();
  if (n == 0) return out;
  const std::size_t m = vocab.max_token_length();
  const SpanTrie& trie = vocab.span_trie();
  const auto& cps = units.codepoints();

  // One trie walk per start position finds every vocabulary span starting
  // there; bucketing them by length reproduces the l-descending, i-ascending
  // scan order.
  std::vector<std::vector<std::pair<std::uint32_t, TokenId>>> by_length(m + 1);
  std::uint64_t window_tests = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t node = SpanTrie::kRoot;
    const std::size_t limit = std::min(m, n - i);
    for (std::size_t k = 0; k < limit; ++k) {
      ++window_tests;
      node = trie.child(node, cps[i + k]);
      if (node == SpanTrie::kNone) break;
      if (const auto id = trie.terminal(node); id != SpanTrie::kNone) {
        by_length[k + 1].emplace_back(static_cast<std::uint32_t>(i), id);
      }
    }
  }

  // owner[x] = start of the mark covering x, or kFree.
  std::vector<std::int32_t> owner(n, kFree);
  std::vector<TokenId> mark_id(n, 0);
  for (std::size_t l = m; l > 0; --l) {
    for (const auto& [i, id] : by_length[l]) {
      // Every existing mark is at least l long, so an overlapping mark must
      // cover one of the window's endpoints.
      if (owner[i] != kFree || owner[i + l - 1] != kFree) continue;
      std::fill(owner.begin() + i, owner.begin() + i + l,
                static_cast<std::int32_t>(i));
      mark_id[i] = id;
      if (trace != nullptr) {
        trace->marks.push_back({i, static_cast<std::uint32_t>(l), id});
      }
    }
  }
  if (trace != nullptr) trace->window_tests += window_tests;

  std::size_t i = 0;
  while (i < n) {
    if (owner[i] == kFree) {
      emit(out, units, vocab, i, 1, vocab.unknown_id());
      ++i;
      continue;
    }
    const TokenId id = mark_id[i];
    const std::size_t len = vocab.token(id).length;
    emit(out, units, vocab, i, len, id);
    i += len;
  }
  return out;
}

Encoding encode_units(const UnitSequence& units, const Vocabulary& vocab,
                      EncodeMode mode) {
  return mode == EncodeMode::kBpeRankFirst ? encode_bpe(units, vocab)
                                           : encode_lbpe(units, vocab);
}

Encoding encode_text(std::string_view text, const Vocabulary& vocab,
                     EncodeMode mode) {
  Encoding out;
  std::string clean;
  if (!utf8::is_valid(text)) {
    clean = utf8::sanitize(text);
    text = clean;
  }
  for_each_pretoken(text, vocab.pretokenizer(), [&](std::string_view piece) {
    out.append(encode_units(UnitSequence(piece), vocab, mode));
  });
  return out;
}

std::string decode(const Encoding& encoding, const Vocabulary& vocab) {
  std::string out;
  for (std::size_t k = 0; k < encoding.ids.size(); ++k) {
    const TokenId id = encoding.ids[k];
    if (vocab.is_known(id)) {
      out += vocab.piece(id);
    } else if (id == vocab.unknown_id() && k < encoding.pieces.size()) {
      out += encoding.pieces[k];
    } else {
      throw Error(ErrorCode::kInvalidTokenId,
                  "token id " + std::to_string(id) + " is outside [0, " +
                      std::to_string(vocab.unknown_id()) + "]");
    }
  }
  return out;
}

}  // namespace lbpe
