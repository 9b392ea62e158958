#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lbpe/encode.hpp"
#include "lbpe/vocabulary.hpp"

namespace lbpe {

// Closed range [lo, hi] of token lengths in scalars; hi == nullopt means
// unbounded.
struct LengthRange {
  std::uint32_t lo = 1;
  std::optional<std::uint32_t> hi;

  bool contains(std::uint32_t len) const {
    return len >= lo && (!hi || len <= *hi);
  }
  std::string label() const;  // "1-3", "16+"

  bool operator==(const LengthRange&) const = default;
};

// 1-3, 4-6, 7-9, 10-12, 13-15, 16+.
std::vector<LengthRange> default_buckets();

// Throws Error(kBadBuckets) unless the ranges are ascending, disjoint and
// cover [1, inf) without gaps.
void check_buckets(const std::vector<LengthRange>& buckets);

class LengthHistogram {
 public:
  explicit LengthHistogram(std::vector<LengthRange> buckets = default_buckets());

  void add(std::uint32_t token_length, std::uint64_t count = 1);
  void add(const Encoding& encoding);
  void merge(const LengthHistogram& other);

  const std::vector<LengthRange>& buckets() const { return buckets_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t count(std::size_t bucket) const { return counts_.at(bucket); }
  std::uint64_t total_tokens() const { return total_tokens_; }

  bool operator==(const LengthHistogram&) const = default;

 private:
  std::vector<LengthRange> buckets_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_tokens_ = 0;
};

LengthHistogram length_distribution(
    std::span<const std::uint32_t> token_lengths,
    std::vector<LengthRange> buckets = default_buckets());

struct CompressionReport {
  EncodeMode mode = EncodeMode::kBpeRankFirst;
  std::uint64_t total_bytes = 0;
  std::uint64_t total_tokens = 0;

  // 0 for an empty corpus.
  double bytes_per_token() const {
    return total_tokens == 0 ? 0.0
                             : static_cast<double>(total_bytes) /
                                   static_cast<double>(total_tokens);
  }
  void merge(const CompressionReport& other) {
    total_bytes += other.total_bytes;
    total_tokens += other.total_tokens;
  }

  bool operator==(const CompressionReport&) const = default;
};

// Compression and length statistics of one encoder over a corpus.
// Accumulation is associative: stats of shards can be merged in any order.
struct EncoderStats {
  CompressionReport compression;
  LengthHistogram histogram;

  explicit EncoderStats(EncodeMode mode = EncodeMode::kBpeRankFirst,
                        std::vector<LengthRange> buckets = default_buckets());

  void add(const Encoding& encoding);
  void merge(const EncoderStats& other);
};

EncoderStats measure(std::span<const std::string> documents,
                     const Vocabulary& vocab, EncodeMode mode,
                     std::vector<LengthRange> buckets = default_buckets());

CompressionReport compression_rate(std::span<const std::string> documents,
                                   const Vocabulary& vocab, EncodeMode mode);

struct BucketDelta {
  LengthRange range;
  std::uint64_t baseline = 0;
  std::uint64_t candidate = 0;
  // candidate - baseline.
  std::int64_t count_delta = 0;
  // 100 * (candidate - baseline) / baseline; nullopt when baseline is 0.
  std::optional<double> relative_percent;
};

struct ComparisonReport {
  EncoderStats baseline;
  EncoderStats candidate;
  std::vector<BucketDelta> buckets;
  std::int64_t token_delta = 0;
  std::optional<double> token_relative_percent;
};

// Bucket-by-bucket comparison of `candidate` against `baseline`. Both must use
// the same buckets.
ComparisonReport compare(const EncoderStats& baseline,
                         const EncoderStats& candidate);

// BPE as baseline, LBPE as candidate.
ComparisonReport compare_encoders(std::span<const std::string> documents,
                                  const Vocabulary& vocab);

enum class BenchImpl { kLbpe, kBpeNaive, kBpe, kLbpeNaive };
const char* to_string(BenchImpl impl);

struct BenchOptions {
  std::size_t runs = 5;
  std::vector<BenchImpl> impls = {BenchImpl::kLbpe, BenchImpl::kBpeNaive};
};

struct BenchRow {
  BenchImpl impl;
  std::size_t bytes = 0;
  std::size_t units = 0;
  std::size_t tokens = 0;
  double median_seconds = 0.0;
  // median_seconds / median_seconds of the previous size, same impl.
  std::optional<double> growth_ratio;
};

// Deterministic text of at most `bytes` bytes, made by cycling through
// `seed_documents` and cutting at a scalar boundary.
std::string synthetic_text(std::span<const std::string> seed_documents,
                           std::size_t bytes);

// Times each implementation on synthetic texts of the given sizes (ascending).
// The whole text is encoded as one unit sequence, single threaded, and the
// median of `runs` timings is reported. Size 0 is skipped.
std::vector<BenchRow> bench_scaling(const Vocabulary& vocab,
                                    std::span<const std::string> seed_documents,
                                    const std::vector<std::size_t>& text_sizes,
                                    const BenchOptions& options = {});

}  // namespace lbpe
