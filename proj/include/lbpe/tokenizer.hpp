#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lbpe/encode.hpp"
#include "lbpe/io.hpp"
#include "lbpe/metrics.hpp"
#include "lbpe/train.hpp"
#include "lbpe/vocabulary.hpp"

namespace lbpe {

// Loaded vocabulary plus a default mode. This is the surface foreign-language
// bindings wrap: only strings, paths and id arrays cross it.
class Tokenizer {
 public:
  Tokenizer(Vocabulary vocab, EncodeMode mode = EncodeMode::kLbpeLongestFirst)
      : vocab_(std::move(vocab)), mode_(mode) {}

  static Tokenizer from_file(const std::filesystem::path& path,
                             EncodeMode mode = EncodeMode::kLbpeLongestFirst) {
    return Tokenizer(io::load_vocab(path), mode);
  }

  // Trains on `corpus` and writes the vocabulary file to `out`.
  static Tokenizer train(const io::CorpusSource& corpus,
                         const TrainerConfig& config,
                         const std::filesystem::path& out);

  Encoding encode_full(std::string_view text) const {
    return encode_text(text, vocab_, mode_);
  }
  Encoding encode_full(std::string_view text, EncodeMode mode) const {
    return encode_text(text, vocab_, mode);
  }
  std::vector<TokenId> encode(std::string_view text) const {
    return encode_full(text).ids;
  }
  std::vector<TokenId> encode(std::string_view text, EncodeMode mode) const {
    return encode_full(text, mode).ids;
  }

  std::string decode(const Encoding& encoding) const {
    return lbpe::decode(encoding, vocab_);
  }
  // Unknown ids carry no text here and decode to U+FFFD.
  std::string decode(std::span<const TokenId> ids) const;

  const Vocabulary& vocab() const { return vocab_; }
  EncodeMode mode() const { return mode_; }

 private:
  Vocabulary vocab_;
  EncodeMode mode_;
};

ComparisonReport compare(const Tokenizer& tokenizer,
                         std::span<const std::string> documents);

}  // namespace lbpe
