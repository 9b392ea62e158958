#include "lbpe/train.hpp"

#include <algorithm>
#include <cstdio>
#include <queue>
#include <unordered_map>

#include "lbpe/error.hpp"
#include "lbpe/utf8.hpp"

namespace lbpe {

std::vector<PairCount> count_pairs(const CorpusState& state) {
  std::map<std::pair<TokenId, TokenId>, std::uint64_t> counts;
  for (const auto& seq : state) {
    for (std::size_t i = 0; i + 1 < seq.ids.size(); ++i) {
      counts[{seq.ids[i], seq.ids[i + 1]}] += seq.weight;
    }
  }
  std::vector<PairCount> out;
  out.reserve(counts.size());
  for (const auto& [pair, freq] : counts) {
    out.push_back({pair.first, pair.second, freq});
  }
  return out;
}

void apply_merge(std::vector<TokenId>& ids, TokenId left, TokenId right,
                 TokenId merged) {
  std::size_t write = 0;
  std::size_t read = 0;
  while (read < ids.size()) {
    if (read + 1 < ids.size() && ids[read] == left && ids[read + 1] == right) {
      ids[write++] = merged;
      read += 2;
    } else {
      ids[write++] = ids[read++];
    }
  }
  ids.resize(write);
}

CorpusState apply_merge(CorpusState state, TokenId left, TokenId right,
                        TokenId merged) {
  for (auto& seq : state) apply_merge(seq.ids, left, right, merged);
  return state;
}

void PretokenCounter::add_document(std::string_view text) {
  for (unsigned char c : text) {
    fingerprint_ ^= c;
    fingerprint_ *= 0x100000001b3ULL;
  }
  fingerprint_ ^= 0xFF;
  fingerprint_ *= 0x100000001b3ULL;
  ++documents_;
  characters_ += utf8::length(text);
  for_each_pretoken(text, config_, [&](std::string_view piece) {
    auto it = table_.find(piece);
    if (it == table_.end()) {
      table_.emplace(std::string(piece), 1);
    } else {
      ++it->second;
    }
  });
}

std::string fingerprint_hex(std::uint64_t fingerprint) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fingerprint));
  return buf;
}

namespace {

using PairKey = std::uint64_t;

PairKey pair_key(TokenId l, TokenId r) {
  return (static_cast<PairKey>(l) << 32) | r;
}
TokenId key_left(PairKey k) { return static_cast<TokenId>(k >> 32); }
TokenId key_right(PairKey k) { return static_cast<TokenId>(k & 0xFFFFFFFFu); }

struct HeapEntry {
  std::uint64_t frequency;
  PairKey key;
};

class Trainer {
 public:
  Trainer(const PretokenCounter& counter, const TrainerConfig& config)
      : config_(config) {
    load_units(counter);
  }

  TrainResult run(const PretokenCounter& counter) {
    TrainResult result;
    count_all();
    while (pieces_.size() < config_.target_vocab_size) {
      const auto best = pop_best();
      if (!best || best->frequency < config_.min_pair_frequency) break;
      const TokenId l = key_left(best->key);
      const TokenId r = key_right(best->key);
      std::string piece = pieces_[l] + pieces_[r];
      TokenId merged;
      if (auto it = piece_ids_.find(piece); it != piece_ids_.end()) {
        merged = it->second;
      } else {
        merged = static_cast<TokenId>(pieces_.size());
        piece_ids_.emplace(piece, merged);
        pieces_.push_back(std::move(piece));
      }
      result.merges.push_back({l, r, merged, best->frequency});
      merge(best->key, merged);
    }

    VocabMetadata meta;
    meta.target_vocab_size = config_.target_vocab_size;
    meta.min_pair_frequency = config_.min_pair_frequency;
    meta.merges = result.merges.size();
    meta.documents = counter.documents();
    meta.corpus_fingerprint = fingerprint_hex(counter.fingerprint());
    result.vocab =
        Vocabulary::from_pieces(pieces_, config_.pretokenizer, std::move(meta));
    return result;
  }

 private:
  void load_units(const PretokenCounter& counter) {
    std::map<char32_t, std::uint64_t> unit_freq;
    std::vector<std::pair<std::u32string, std::uint64_t>> decoded;
    decoded.reserve(counter.table().size());
    for (const auto& [text, weight] : counter.table()) {
      auto cps = utf8::decode(text).codepoints;
      for (char32_t cp : cps) unit_freq[cp] += weight;
      decoded.emplace_back(std::move(cps), weight);
    }
    if (unit_freq.empty()) {
      throw Error(ErrorCode::kEmptyCorpus, "corpus contains no characters");
    }
    if (unit_freq.size() > config_.target_vocab_size) {
      throw Error(ErrorCode::kAlphabetExceedsTarget,
                  "corpus has " + std::to_string(unit_freq.size()) +
                      " distinct characters but the target vocabulary size is " +
                      std::to_string(config_.target_vocab_size));
    }
    std::vector<std::pair<char32_t, std::uint64_t>> units(unit_freq.begin(),
                                                          unit_freq.end());
    std::stable_sort(units.begin(), units.end(),
                     [](const auto& a, const auto& b) {
                       return a.second > b.second;
                     });
    std::unordered_map<char32_t, TokenId> unit_ids;
    for (const auto& [cp, freq] : units) {
      std::string piece;
      utf8::append(piece, cp);
      const auto id = static_cast<TokenId>(pieces_.size());
      unit_ids.emplace(cp, id);
      piece_ids_.emplace(piece, id);
      pieces_.push_back(std::move(piece));
    }
    words_.reserve(decoded.size());
    for (const auto& [cps, weight] : decoded) {
      WeightedSequence w;
      w.weight = weight;
      w.ids.reserve(cps.size());
      for (char32_t cp : cps) w.ids.push_back(unit_ids.at(cp));
      words_.push_back(std::move(w));
    }
  }

  // Max-heap order: higher frequency first, then smaller pieces.
  bool worse(const HeapEntry& a, const HeapEntry& b) const {
    if (a.frequency != b.frequency) return a.frequency < b.frequency;
    const auto& al = pieces_[key_left(a.key)];
    const auto& bl = pieces_[key_left(b.key)];
    if (al != bl) return al > bl;
    return pieces_[key_right(a.key)] > pieces_[key_right(b.key)];
  }

  void push(PairKey key, std::uint64_t freq) {
    heap_.push_back({freq, key});
    std::push_heap(heap_.begin(), heap_.end(),
                   [this](const auto& a, const auto& b) { return worse(a, b); });
  }

  std::optional<HeapEntry> pop_best() {
    auto cmp = [this](const auto& a, const auto& b) { return worse(a, b); };
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), cmp);
      const HeapEntry e = heap_.back();
      heap_.pop_back();
      auto it = counts_.find(e.key);
      if (it != counts_.end() && it->second == e.frequency && e.frequency > 0) {
        return e;
      }
    }
    return std::nullopt;
  }

  void count_all() {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      const auto& ids = words_[w].ids;
      for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
        const PairKey k = pair_key(ids[i], ids[i + 1]);
        counts_[k] += words_[w].weight;
        where_[k].push_back(static_cast<std::uint32_t>(w));
      }
    }
    // Sorted keys keep heap construction independent of hash order.
    std::vector<PairKey> keys;
    keys.reserve(counts_.size());
    for (const auto& [k, c] : counts_) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    for (PairKey k : keys) push(k, counts_[k]);
  }

  void merge(PairKey key, TokenId merged) {
    const TokenId l = key_left(key);
    const TokenId r = key_right(key);
    auto words = std::move(where_[key]);
    where_.erase(key);
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());

    std::map<PairKey, std::int64_t> delta;
    for (std::uint32_t w : words) {
      auto& seq = words_[w];
      const auto weight = static_cast<std::int64_t>(seq.weight);
      bool present = false;
      for (std::size_t i = 0; i + 1 < seq.ids.size() && !present; ++i) {
        present = seq.ids[i] == l && seq.ids[i + 1] == r;
      }
      if (!present) continue;
      for (std::size_t i = 0; i + 1 < seq.ids.size(); ++i) {
        delta[pair_key(seq.ids[i], seq.ids[i + 1])] -= weight;
      }
      apply_merge(seq.ids, l, r, merged);
      for (std::size_t i = 0; i + 1 < seq.ids.size(); ++i) {
        const PairKey k = pair_key(seq.ids[i], seq.ids[i + 1]);
        delta[k] += weight;
        if (seq.ids[i] == merged || seq.ids[i + 1] == merged) {
          where_[k].push_back(w);
        }
      }
    }
    for (const auto& [k, d] : delta) {
      if (d == 0) continue;
      auto& c = counts_[k];
      c = static_cast<std::uint64_t>(static_cast<std::int64_t>(c) + d);
      if (c == 0) {
        counts_.erase(k);
      } else {
        push(k, c);
      }
    }
  }

  TrainerConfig config_;
  std::vector<std::string> pieces_;
  std::unordered_map<std::string, TokenId> piece_ids_;
  std::vector<WeightedSequence> words_;
  std::unordered_map<PairKey, std::uint64_t> counts_;
  std::unordered_map<PairKey, std::vector<std::uint32_t>> where_;
  std::vector<HeapEntry> heap_;
};

}  // namespace

TrainResult train(const PretokenCounter& counter, const TrainerConfig& config) {
  if (counter.documents() == 0 || counter.table().empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "corpus contains no documents");
  }
  Trainer trainer(counter, config);
  return trainer.run(counter);
}

Vocabulary train(const std::vector<std::string>& documents,
                 const TrainerConfig& config) {
  PretokenCounter counter(config.pretokenizer);
  for (const auto& doc : documents) counter.add_document(doc);
  return train(counter, config).vocab;
}

}  // namespace lbpe
