#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "lbpe/io.hpp"
#include "lbpe/utf8.hpp"
#include "lbpe/vocabulary.hpp"

namespace lbpe::fixtures {

inline std::filesystem::path data_dir() { return LBPE_DATA_DIR; }
inline std::filesystem::path test_dir() { return LBPE_TEST_DIR; }

inline const std::string kSpace = " ";

// Units {space, C, a, p, i, t, l, s} followed by al, als, " Capital".
// Not closed under decomposition, so it is built without validation.
inline Vocabulary figure_vocab() {
  return Vocabulary::from_pieces(
      {" ", "C", "a", "p", "i", "t", "l", "s", "al", "als", " Capital"});
}

inline const Vocabulary& mini_vocab() {
  static const Vocabulary v =
      io::load_vocab(data_dir() / "mini_vocab_2000.json");
  return v;
}

inline const std::vector<std::string>& mini_corpus() {
  static const std::vector<std::string> docs =
      io::read_corpus({{data_dir() / "mini_corpus"}});
  return docs;
}

// Random strings of up to `max_chars` scalars. Most characters come from a
// vocabulary's units or the ASCII range so merges actually fire; the rest are
// arbitrary scalars (including ones outside any vocabulary).
class TextFuzzer {
 public:
  TextFuzzer(const Vocabulary& vocab, std::uint64_t seed) : rng_(seed) {
    for (TokenId r : vocab.unit_alphabet()) {
      alphabet_.push_back(utf8::decode(vocab.piece(r)).codepoints.at(0));
    }
    if (alphabet_.empty()) alphabet_.push_back(U'a');
  }

  std::string next(std::size_t max_chars) {
    std::uniform_int_distribution<std::size_t> len(0, max_chars);
    std::uniform_int_distribution<int> pick(0, 99);
    std::uniform_int_distribution<std::size_t> unit(0, alphabet_.size() - 1);
    std::uniform_int_distribution<std::uint32_t> ascii(0x20, 0x7E);
    std::uniform_int_distribution<std::uint32_t> any(0x80, 0x10FFFF);
    std::u32string cps;
    std::size_t n = len(rng_);
    for (std::size_t i = 0; i < n; ++i) {
      int p = pick(rng_);
      if (p < 70) {
        cps.push_back(alphabet_[unit(rng_)]);
      } else if (p < 85) {
        cps.push_back(ascii(rng_));
      } else if (p < 90) {
        cps.push_back(U'\n');
      } else {
        char32_t c;
        do {
          c = any(rng_);
        } while (c >= 0xD800 && c <= 0xDFFF);
        cps.push_back(c);
      }
    }
    return utf8::encode(cps);
  }

 private:
  std::mt19937_64 rng_;
  std::vector<char32_t> alphabet_;
};

}  // namespace lbpe::fixtures
