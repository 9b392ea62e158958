#include "lbpe/metrics.hpp"

#include <algorithm>
#include <chrono>

#include "lbpe/error.hpp"
#include "lbpe/utf8.hpp"

namespace lbpe {

std::string LengthRange::label() const {
  if (!hi) return std::to_string(lo) + "+";
  return std::to_string(lo) + "-" + std::to_string(*hi);
}

std::vector<LengthRange> default_buckets() {
  return {{1, 3}, {4, 6}, {7, 9}, {10, 12}, {13, 15}, {16, std::nullopt}};
}

void check_buckets(const std::vector<LengthRange>& buckets) {
  if (buckets.empty()) {
    throw Error(ErrorCode::kBadBuckets, "no buckets");
  }
  std::uint32_t expected = 1;
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    const auto& b = buckets[i];
    if (b.lo != expected) {
      throw Error(ErrorCode::kBadBuckets,
                  "bucket " + b.label() + " should start at " +
                      std::to_string(expected) +
                      (b.lo < expected ? " (overlap)" : " (gap)"));
    }
    if (!b.hi) {
      if (i + 1 != buckets.size()) {
        throw Error(ErrorCode::kBadBuckets,
                    "unbounded bucket " + b.label() + " must be last");
      }
      return;
    }
    if (*b.hi < b.lo) {
      throw Error(ErrorCode::kBadBuckets, "empty bucket " + b.label());
    }
    expected = *b.hi + 1;
  }
  throw Error(ErrorCode::kBadBuckets,
              "buckets stop at " + std::to_string(expected - 1) +
                  "; the last bucket must be unbounded");
}

LengthHistogram::LengthHistogram(std::vector<LengthRange> buckets)
    : buckets_(std::move(buckets)) {
  check_buckets(buckets_);
  counts_.assign(buckets_.size(), 0);
}

void LengthHistogram::add(std::uint32_t token_length, std::uint64_t count) {
  for (std::size_t b = 0; b < buckets_.size(); ++b) {
    if (buckets_[b].contains(token_length)) {
      counts_[b] += count;
      total_tokens_ += count;
      return;
    }
  }
  // Length 0 is the only value outside a checked partition.
  throw Error(ErrorCode::kInvalidArgument, "token length 0");
}

void LengthHistogram::add(const Encoding& encoding) {
  for (const auto& piece : encoding.pieces) {
    add(static_cast<std::uint32_t>(utf8::length(piece)));
  }
}

void LengthHistogram::merge(const LengthHistogram& other) {
  if (other.buckets_ != buckets_) {
    throw Error(ErrorCode::kBadBuckets, "cannot merge different bucket sets");
  }
  for (std::size_t b = 0; b < counts_.size(); ++b) counts_[b] += other.counts_[b];
  total_tokens_ += other.total_tokens_;
}

LengthHistogram length_distribution(
    std::span<const std::uint32_t> token_lengths,
    std::vector<LengthRange> buckets) {
  LengthHistogram h(std::move(buckets));
  for (auto len : token_lengths) h.add(len);
  return h;
}

EncoderStats::EncoderStats(EncodeMode mode, std::vector<LengthRange> buckets)
    : histogram(std::move(buckets)) {
  compression.mode = mode;
}

void EncoderStats::add(const Encoding& encoding) {
  compression.total_bytes += encoding.source_byte_count;
  compression.total_tokens += encoding.size();
  histogram.add(encoding);
}

void EncoderStats::merge(const EncoderStats& other) {
  compression.merge(other.compression);
  histogram.merge(other.histogram);
}

EncoderStats measure(std::span<const std::string> documents,
                     const Vocabulary& vocab, EncodeMode mode,
                     std::vector<LengthRange> buckets) {
  EncoderStats stats(mode, std::move(buckets));
  for (const auto& doc : documents) stats.add(encode_text(doc, vocab, mode));
  return stats;
}

CompressionReport compression_rate(std::span<const std::string> documents,
                                   const Vocabulary& vocab, EncodeMode mode) {
  return measure(documents, vocab, mode).compression;
}

namespace {

std::optional<double> relative_percent(std::uint64_t base, std::uint64_t cand) {
  if (base == 0) return std::nullopt;
  return 100.0 * (static_cast<double>(cand) - static_cast<double>(base)) /
         static_cast<double>(base);
}

}  // namespace

ComparisonReport compare(const EncoderStats& baseline,
                         const EncoderStats& candidate) {
  if (baseline.histogram.buckets() != candidate.histogram.buckets()) {
    throw Error(ErrorCode::kBadBuckets, "histograms use different buckets");
  }
  ComparisonReport r{baseline, candidate, {}, 0, std::nullopt};
  const auto& buckets = baseline.histogram.buckets();
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    const auto base = baseline.histogram.count(b);
    const auto cand = candidate.histogram.count(b);
    r.buckets.push_back({buckets[b], base, cand,
                         static_cast<std::int64_t>(cand) -
                             static_cast<std::int64_t>(base),
                         relative_percent(base, cand)});
  }
  const auto base_tokens = baseline.compression.total_tokens;
  const auto cand_tokens = candidate.compression.total_tokens;
  r.token_delta = static_cast<std::int64_t>(cand_tokens) -
                  static_cast<std::int64_t>(base_tokens);
  r.token_relative_percent = relative_percent(base_tokens, cand_tokens);
  return r;
}

ComparisonReport compare_encoders(std::span<const std::string> documents,
                                  const Vocabulary& vocab) {
  return compare(measure(documents, vocab, EncodeMode::kBpeRankFirst),
                 measure(documents, vocab, EncodeMode::kLbpeLongestFirst));
}

const char* to_string(BenchImpl impl) {
  switch (impl) {
    case BenchImpl::kLbpe:
      return "lbpe";
    case BenchImpl::kBpeNaive:
      return "bpe-naive";
    case BenchImpl::kBpe:
      return "bpe";
    case BenchImpl::kLbpeNaive:
      return "lbpe-naive";
  }
  return "unknown";
}

std::string synthetic_text(std::span<const std::string> seed_documents,
                           std::size_t bytes) {
  std::string out;
  bool any = false;
  for (const auto& d : seed_documents) any = any || !d.empty();
  if (!any || bytes == 0) return out;
  out.reserve(bytes + 4);
  while (out.size() < bytes) {
    for (const auto& d : seed_documents) {
      out += d;
      if (out.size() >= bytes) break;
    }
  }
  std::size_t cut = bytes;
  while (cut > 0 && (static_cast<unsigned char>(out[cut]) & 0xC0) == 0x80) {
    --cut;
  }
  out.resize(cut);
  return out;
}

namespace {

Encoding run_impl(BenchImpl impl, const UnitSequence& units,
                  const Vocabulary& vocab) {
  switch (impl) {
    case BenchImpl::kLbpe:
      return encode_lbpe(units, vocab);
    case BenchImpl::kBpeNaive:
      return encode_bpe_naive(units, vocab, nullptr,
                              NaiveScan::kCachedPairRanks);
    case BenchImpl::kBpe:
      return encode_bpe(units, vocab);
    case BenchImpl::kLbpeNaive:
      return encode_lbpe_naive(units, vocab);
  }
  return {};
}

}  // namespace

std::vector<BenchRow> bench_scaling(const Vocabulary& vocab,
                                    std::span<const std::string> seed_documents,
                                    const std::vector<std::size_t>& text_sizes,
                                    const BenchOptions& options) {
  if (!std::is_sorted(text_sizes.begin(), text_sizes.end())) {
    throw Error(ErrorCode::kInvalidArgument, "text sizes must be ascending");
  }
  const std::size_t runs = std::max<std::size_t>(options.runs, 1);
  std::vector<BenchRow> rows;
  for (BenchImpl impl : options.impls) {
    std::optional<double> previous;
    for (std::size_t size : text_sizes) {
      if (size == 0) continue;
      const UnitSequence units(synthetic_text(seed_documents, size));
      BenchRow row{impl, units.text().size(), units.size(), 0, 0.0,
                   std::nullopt};
      std::vector<double> times;
      row.tokens = run_impl(impl, units, vocab).size();  // warm-up
      for (std::size_t r = 0; r < runs; ++r) {
        const auto start = std::chrono::steady_clock::now();
        const Encoding enc = run_impl(impl, units, vocab);
        const auto stop = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(stop - start).count());
      }
      std::sort(times.begin(), times.end());
      row.median_seconds = times[times.size() / 2];
      if (previous && *previous > 0) {
        row.growth_ratio = row.median_seconds / *previous;
      }
      previous = row.median_seconds;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace lbpe
