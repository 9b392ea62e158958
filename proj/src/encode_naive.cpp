#include <algorithm>
#include <limits>

#include "lbpe/encode.hpp"

namespace lbpe {
namespace {

constexpr TokenId kNoPair = std::numeric_limits<TokenId>::max();

struct Piece {
  std::string text;
  TokenId id;
  bool known;
};

// Builds the final Encoding, folding adjacent unknown pieces together.
Encoding finish(const UnitSequence& units, const std::vector<Piece>& seq,
                const Vocabulary& vocab) {
  Encoding out;
  out.source_char_count = units.size();
  out.source_byte_count = units.text().size();
  for (const auto& p : seq) {
    if (!p.known && !out.ids.empty() && out.ids.back() == vocab.unknown_id()) {
      out.pieces.back() += p.text;
      continue;
    }
    out.ids.push_back(p.known ? p.id : vocab.unknown_id());
    out.pieces.push_back(p.text);
  }
  return out;
}

}  // namespace

Encoding encode_bpe_naive(const UnitSequence& units, const Vocabulary& vocab,
                          std::vector<BpeMergeStep>* steps, NaiveScan scan) {
  // Token i starts at unit i; merging absorbs the right neighbour, whose slot
  // becomes dead. next[i] is the start of the following live token.
  const std::size_t n = units.size();
  const TokenId unk = vocab.unknown_id();
  std::vector<TokenId> ids(n);
  std::vector<std::size_t> next(n);
  std::vector<std::size_t> prev(n);
  std::vector<bool> live(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = vocab.rank_of(units.unit(i)).value_or(unk);
    next[i] = i + 1;
    prev[i] = i == 0 ? n : i - 1;
  }

  // Look the concatenated piece up directly.
  auto pair_rank = [&](std::size_t i) -> TokenId {
    if (i >= n || !live[i] || next[i] >= n) return kNoPair;
    if (ids[i] == unk || ids[next[i]] == unk) return kNoPair;
    return vocab.rank_of(vocab.piece(ids[i]) + vocab.piece(ids[next[i]]))
        .value_or(kNoPair);
  };

  std::vector<TokenId> ranks(n, kNoPair);
  for (std::size_t i = 0; i < n; ++i) ranks[i] = pair_rank(i);

  for (std::size_t step = 0; n > 0; ++step) {
    if (scan == NaiveScan::kFullRescan && step > 0) {
      for (std::size_t i = 0; i < n; ++i) ranks[i] = pair_rank(i);
    }
    // argmin over all adjacent pairs; the first minimum is the leftmost.
    const TokenId best_rank = *std::min_element(ranks.begin(), ranks.end());
    if (best_rank == kNoPair) break;
    const auto best = static_cast<std::size_t>(
        std::find(ranks.begin(), ranks.end(), best_rank) - ranks.begin());

    if (steps != nullptr) {
      const auto position = static_cast<std::size_t>(
          std::count(live.begin(), live.begin() + best, true));
      steps->push_back({position, best_rank});
    }
    const std::size_t right = next[best];
    ids[best] = best_rank;
    live[right] = false;
    ranks[right] = kNoPair;
    next[best] = next[right];
    if (next[best] < n) prev[next[best]] = best;
    if (scan == NaiveScan::kCachedPairRanks) {
      ranks[best] = pair_rank(best);
      if (prev[best] < n) ranks[prev[best]] = pair_rank(prev[best]);
    }
  }

  std::vector<Piece> seq;
  for (std::size_t i = 0; i < n; i = next[i]) {
    seq.push_back({std::string(units.span(i, next[i] - i)), ids[i],
                   ids[i] != unk});
  }
  return finish(units, seq, vocab);
}

Encoding encode_lbpe_naive(const UnitSequence& units, const Vocabulary& vocab,
                           LbpeTrace* trace) {
  const std::size_t n = units.size();
  struct Mark {
    bool set = false;
    std::size_t start = 0;
    TokenId id = 0;
  };
  std::vector<Mark> marks(n);

  for (std::size_t l = vocab.max_token_length(); l > 0; --l) {
    for (std::size_t i = 0; i + l <= n; ++i) {
      if (trace != nullptr) ++trace->window_tests;
      const auto t = vocab.rank_of(units.span(i, l));
      if (!t) continue;
      bool free = true;
      for (std::size_t x = i; x < i + l; ++x) free = free && !marks[x].set;
      if (!free) continue;
      for (std::size_t x = i; x < i + l; ++x) marks[x] = {true, i, *t};
      if (trace != nullptr) {
        trace->marks.push_back({static_cast<std::uint32_t>(i),
                                static_cast<std::uint32_t>(l), *t});
      }
    }
  }

  std::vector<Piece> seq;
  std::size_t i = 0;
  while (i < n) {
    if (!marks[i].set) {
      seq.push_back({std::string(units.unit(i)), 0, false});
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < n && marks[end].set && marks[end].start == i) ++end;
    seq.push_back({std::string(units.span(i, end - i)), marks[i].id, true});
    i = end;
  }
  return finish(units, seq, vocab);
}

}  // namespace lbpe
