#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "lbpe/error.hpp"
#include "lbpe/metrics.hpp"
#include "test_support.hpp"

using namespace lbpe;

namespace lbpe {
void PrintTo(EncodeMode m, std::ostream* os) { *os << to_string(m); }
}  // namespace lbpe

namespace {

nlohmann::json golden() {
  std::ifstream in(fixtures::test_dir() / "golden" / "mini_corpus.json");
  return nlohmann::json::parse(in);
}

std::string id_digest(std::span<const std::string> docs, const Vocabulary& v,
                      EncodeMode mode) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& d : docs) {
    for (TokenId id : encode_text(d, v, mode).ids) {
      for (int b = 0; b < 4; ++b) {
        h ^= (id >> (8 * b)) & 0xFF;
        h *= 0x100000001b3ULL;
      }
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

TEST(Buckets, Defaults) {
  auto b = default_buckets();
  ASSERT_EQ(b.size(), 6u);
  EXPECT_EQ(b[0].label(), "1-3");
  EXPECT_EQ(b[5].label(), "16+");
  EXPECT_NO_THROW(check_buckets(b));
}

TEST(Buckets, RejectsGapsAndOverlaps) {
  auto expect_bad = [](std::vector<LengthRange> b) {
    try {
      check_buckets(b);
      ADD_FAILURE() << "accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kBadBuckets);
    }
  };
  expect_bad({{1, 3}, {5, std::nullopt}});
  expect_bad({{1, 3}, {3, std::nullopt}});
  expect_bad({{2, std::nullopt}});
  expect_bad({{1, 3}, {4, 6}});
  expect_bad({});
}

TEST(Histogram, Examples) {
  std::vector<std::uint32_t> lens{1, 2, 7};
  auto h = length_distribution(lens);
  EXPECT_EQ(h.counts(), (std::vector<std::uint64_t>{2, 0, 1, 0, 0, 0}));
  EXPECT_EQ(h.total_tokens(), 3u);
  auto empty = length_distribution({});
  EXPECT_EQ(empty.counts(), std::vector<std::uint64_t>(6, 0));
  EXPECT_EQ(empty.total_tokens(), 0u);
}

TEST(Compression, Examples) {
  auto v = Vocabulary::from_pieces({"a", "aa", "aaaa"});
  std::vector<std::string> docs{"aaaa"};
  auto r = compression_rate(docs, v, EncodeMode::kLbpeLongestFirst);
  EXPECT_EQ(r.total_bytes, 4u);
  EXPECT_EQ(r.total_tokens, 1u);
  EXPECT_DOUBLE_EQ(r.bytes_per_token(), 4.0);
  EXPECT_EQ(CompressionReport{}.bytes_per_token(), 0.0);
}

TEST(Compare, FigureMicroCorpus) {
  std::vector<std::string> docs{" Capitals"};
  auto r = compare_encoders(docs, fixtures::figure_vocab());
  EXPECT_EQ(r.baseline.compression.total_tokens, 7u);
  EXPECT_EQ(r.candidate.compression.total_tokens, 2u);
  EXPECT_EQ(r.token_delta, -5);
  // " Capital" is 8 long, "s" 1.
  EXPECT_EQ(r.candidate.histogram.counts(),
            (std::vector<std::uint64_t>{1, 0, 1, 0, 0, 0}));
  EXPECT_EQ(r.buckets[2].count_delta, 1);
  EXPECT_FALSE(r.buckets[2].relative_percent.has_value());
}

TEST(Compare, IdenticalSingleChar) {
  std::vector<std::string> docs{"x"};
  auto r = compare_encoders(docs, Vocabulary::from_pieces({"x"}));
  EXPECT_EQ(r.token_delta, 0);
  for (const auto& b : r.buckets) {
    EXPECT_EQ(b.count_delta, 0);
    if (b.relative_percent) EXPECT_EQ(*b.relative_percent, 0.0);
  }
}

TEST(Compare, Antisymmetric) {
  const auto& docs = fixtures::mini_corpus();
  std::vector<std::string> some(docs.begin(), docs.begin() + 2);
  const auto& v = fixtures::mini_vocab();
  auto b = measure(some, v, EncodeMode::kBpeRankFirst);
  auto l = measure(some, v, EncodeMode::kLbpeLongestFirst);
  auto fwd = compare(b, l);
  auto rev = compare(l, b);
  EXPECT_EQ(fwd.token_delta, -rev.token_delta);
  for (std::size_t k = 0; k < fwd.buckets.size(); ++k) {
    EXPECT_EQ(fwd.buckets[k].count_delta, -rev.buckets[k].count_delta);
    // Percentages are relative to different bases, so only the sign flips.
    if (fwd.buckets[k].relative_percent && rev.buckets[k].relative_percent) {
      EXPECT_EQ(*fwd.buckets[k].relative_percent > 0,
                *rev.buckets[k].relative_percent < 0);
    }
  }
}

TEST(Stats, MergeIsAssociative) {
  const auto& docs = fixtures::mini_corpus();
  const auto& v = fixtures::mini_vocab();
  auto whole = measure(docs, v, EncodeMode::kLbpeLongestFirst);
  EncoderStats parts(EncodeMode::kLbpeLongestFirst);
  for (std::size_t k = docs.size(); k-- > 0;) {
    parts.merge(measure(std::span(docs).subspan(k, 1), v,
                        EncodeMode::kLbpeLongestFirst));
  }
  EXPECT_EQ(parts.compression, whole.compression);
  EXPECT_EQ(parts.histogram, whole.histogram);
}

class MiniCorpusGolden : public ::testing::TestWithParam<EncodeMode> {};

TEST_P(MiniCorpusGolden, MatchesReferenceRun) {
  auto g = golden()[to_string(GetParam())];
  const auto& docs = fixtures::mini_corpus();
  const auto& v = fixtures::mini_vocab();
  auto s = measure(docs, v, GetParam());
  EXPECT_EQ(s.compression.total_bytes, g["total_bytes"].get<std::uint64_t>());
  EXPECT_EQ(s.compression.total_tokens, g["total_tokens"].get<std::uint64_t>());
  EXPECT_EQ(s.histogram.counts(), g["histogram"].get<std::vector<std::uint64_t>>());
  EXPECT_EQ(id_digest(docs, v, GetParam()), g["id_digest"].get<std::string>());

  std::uint64_t sum = 0;
  for (auto c : s.histogram.counts()) sum += c;
  EXPECT_EQ(sum, s.histogram.total_tokens());
  EXPECT_EQ(s.histogram.total_tokens(), s.compression.total_tokens);
  EXPECT_DOUBLE_EQ(s.compression.bytes_per_token() *
                       static_cast<double>(s.compression.total_tokens),
                   static_cast<double>(s.compression.total_bytes));
}

INSTANTIATE_TEST_SUITE_P(Modes, MiniCorpusGolden,
                         ::testing::Values(EncodeMode::kBpeRankFirst,
                                           EncodeMode::kLbpeLongestFirst),
                         [](const auto& info) {
                           return std::string(to_string(info.param));
                         });

TEST(Bench, SyntheticTextAndZeroSize) {
  std::vector<std::string> seed{"ab\xC3\xA9"};
  EXPECT_EQ(synthetic_text(seed, 9), "ab\xC3\xA9" "ab\xC3\xA9" "a");
  EXPECT_EQ(synthetic_text(seed, 3), "ab");
  auto v = Vocabulary::from_pieces({"a", "b", "ab"});
  auto rows = bench_scaling(v, seed, {0, 64, 128},
                            {.runs = 1, .impls = {BenchImpl::kLbpe}});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].bytes, 64u);
  EXPECT_FALSE(rows[0].growth_ratio.has_value());
  EXPECT_TRUE(rows[1].growth_ratio.has_value());
}
