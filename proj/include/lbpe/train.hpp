#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lbpe/pretokenize.hpp"
#include "lbpe/vocabulary.hpp"

namespace lbpe {

struct TrainerConfig {
  std::size_t target_vocab_size = 32000;
  std::uint64_t min_pair_frequency = 2;
  PreTokenizerConfig pretokenizer;
};

struct PairCount {
  TokenId left = 0;
  TokenId right = 0;
  std::uint64_t frequency = 0;

  bool operator==(const PairCount&) const = default;
};

// A pretoken as the token ids it is currently split into, weighted by how
// often the pretoken occurs in the corpus.
struct WeightedSequence {
  std::vector<TokenId> ids;
  std::uint64_t weight = 1;

  bool operator==(const WeightedSequence&) const = default;
};

using CorpusState = std::vector<WeightedSequence>;

// Weighted counts of adjacent pairs inside each sequence, sorted by
// (left, right). Pairs never span two sequences.
std::vector<PairCount> count_pairs(const CorpusState& state);

// Replaces non-overlapping occurrences of (left, right), scanning left to
// right, with `merged`.
void apply_merge(std::vector<TokenId>& ids, TokenId left, TokenId right,
                 TokenId merged);
CorpusState apply_merge(CorpusState state, TokenId left, TokenId right,
                        TokenId merged);

// Streaming accumulator for the pretoken -> weight table. Only this table is
// kept in memory, never the corpus.
class PretokenCounter {
 public:
  explicit PretokenCounter(PreTokenizerConfig config = {}) : config_(config) {}

  void add_document(std::string_view text);

  const std::map<std::string, std::uint64_t, std::less<>>& table() const {
    return table_;
  }
  const PreTokenizerConfig& config() const { return config_; }
  std::uint64_t documents() const { return documents_; }
  std::uint64_t characters() const { return characters_; }
  // FNV-1a over the document bytes, one 0xFF separator after each document.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  PreTokenizerConfig config_;
  std::map<std::string, std::uint64_t, std::less<>> table_;
  std::uint64_t documents_ = 0;
  std::uint64_t characters_ = 0;
  std::uint64_t fingerprint_ = 0xcbf29ce484222325ULL;
};

std::string fingerprint_hex(std::uint64_t fingerprint);

struct MergeRecord {
  TokenId left = 0;
  TokenId right = 0;
  TokenId merged = 0;
  std::uint64_t frequency = 0;

  bool operator==(const MergeRecord&) const = default;
};

struct TrainResult {
  Vocabulary vocab;
  std::vector<MergeRecord> merges;
};

// Units first (frequency descending, then codepoint ascending), then one
// token per merge in merge order. Each step merges the most frequent pair;
// ties go to the smallest (left piece, right piece) in codepoint order.
// Stops at target_vocab_size or when the best pair is below
// min_pair_frequency. A merge whose piece already exists reuses that token.
//
// Throws Error(kEmptyCorpus) or Error(kAlphabetExceedsTarget).
TrainResult train(const PretokenCounter& counter, const TrainerConfig& config);

Vocabulary train(const std::vector<std::string>& documents,
                 const TrainerConfig& config);

}  // namespace lbpe
