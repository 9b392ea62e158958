#include "lbpe/tokenizer.hpp"

#include "lbpe/error.hpp"
#include "lbpe/utf8.hpp"

namespace lbpe {

Tokenizer Tokenizer::train(const io::CorpusSource& corpus,
                           const TrainerConfig& config,
                           const std::filesystem::path& out) {
  PretokenCounter counter(config.pretokenizer);
  io::CorpusReader reader(corpus);
  while (auto doc = reader.next()) counter.add_document(*doc);
  auto result = lbpe::train(counter, config);
  io::save_vocab(result.vocab, out);
  return Tokenizer(std::move(result.vocab));
}

std::string Tokenizer::decode(std::span<const TokenId> ids) const {
  std::string out;
  for (TokenId id : ids) {
    if (vocab_.is_known(id)) {
      out += vocab_.piece(id);
    } else if (id == vocab_.unknown_id()) {
      utf8::append(out, utf8::kReplacementChar);
    } else {
      throw Error(ErrorCode::kInvalidTokenId,
                  "token id " + std::to_string(id) + " is outside [0, " +
                      std::to_string(vocab_.unknown_id()) + "]");
    }
  }
  return out;
}

ComparisonReport compare(const Tokenizer& tokenizer,
                         std::span<const std::string> documents) {
  return compare_encoders(documents, tokenizer.vocab());
}

}  // namespace lbpe
