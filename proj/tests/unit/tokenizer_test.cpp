#include <gtest/gtest.h>

#include <filesystem>

#include "lbpe/error.hpp"
#include "lbpe/tokenizer.hpp"
#include "test_support.hpp"

using namespace lbpe;

TEST(Tokenizer, FigureParity) {
  auto t = Tokenizer::from_file(fixtures::test_dir() / "data" / "figure_vocab.json");
  EXPECT_EQ(t.encode(" Capitals"), (std::vector<TokenId>{15, 7}));
  EXPECT_EQ(t.encode(" Capitals", EncodeMode::kBpeRankFirst),
            (std::vector<TokenId>{14, 9}));
  EXPECT_TRUE(t.encode("").empty());
}

TEST(Tokenizer, DecodeIds) {
  Tokenizer t(fixtures::mini_vocab(), EncodeMode::kBpeRankFirst);
  std::string s = "plain words";
  EXPECT_EQ(t.decode(t.encode(s)), s);
  EXPECT_EQ(t.decode(t.encode_full("a\xE4\xB8\xAD")), "a\xE4\xB8\xAD");
  // Bare ids lose unknown text.
  EXPECT_EQ(t.decode(t.encode("a\xE4\xB8\xAD")), "a\xEF\xBF\xBD");
  std::vector<TokenId> bad{5000};
  EXPECT_THROW(t.decode(bad), Error);
}

TEST(Tokenizer, TrainWritesFile) {
  auto out = std::filesystem::temp_directory_path() / "lbpe_tok_train.json";
  TrainerConfig cfg;
  cfg.target_vocab_size = 120;
  auto t = Tokenizer::train({{fixtures::data_dir() / "mini_corpus" / "sonnets.txt"}},
                            cfg, out);
  EXPECT_EQ(Tokenizer::from_file(out).vocab(), t.vocab());
  EXPECT_EQ(t.vocab().size(), 120u);
  EXPECT_THROW(Tokenizer::from_file("/nonexistent/v.json"), Error);
}

TEST(Tokenizer, Compare) {
  auto t = Tokenizer::from_file(fixtures::test_dir() / "data" / "figure_vocab.json");
  std::vector<std::string> docs{" Capitals"};
  auto r = compare(t, docs);
  EXPECT_EQ(r.baseline.compression.total_tokens, 2u);
  EXPECT_EQ(r.candidate.compression.total_tokens, 2u);
}
