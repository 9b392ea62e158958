#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lbpe/encode.hpp"
#include "lbpe/vocabulary.hpp"

namespace lbpe::io {

inline constexpr int kVocabFormatVersion = 1;
inline constexpr std::string_view kVocabFormatName = "lbpe-vocab";

// Vocabulary file: a JSON document with every string escaped to ASCII, one
// token per line. Layout is described in docs/FORMATS.md.
std::string serialize_vocab(const Vocabulary& vocab);

// Parses and validates. Throws Error(kFormatVersionUnsupported) for empty
// input or an unknown version, Error(kMalformedFile) for structural problems
// and ValidationError when the vocabulary breaks an invariant.
Vocabulary parse_vocab(std::string_view contents);

void save_vocab(const Vocabulary& vocab, const std::filesystem::path& path);
Vocabulary load_vocab(const std::filesystem::path& path);

enum class CorpusFormat {
  kAuto,       // .jsonl / .ndjson are records, everything else plain text
  kPlainText,  // one document per file
  kJsonLines,  // one document per line, taken from `text_field`
};

struct CorpusSource {
  std::vector<std::filesystem::path> paths;  // files or directories
  CorpusFormat format = CorpusFormat::kAuto;
  std::string text_field = "text";
};

// Files named by `paths`, with directories expanded recursively. Directory
// contents are sorted by path; explicit paths keep their order.
std::vector<std::filesystem::path> expand_paths(
    const std::vector<std::filesystem::path>& paths);

// Streams documents in file order. Invalid UTF-8 is replaced with U+FFFD and
// counted.
class CorpusReader {
 public:
  explicit CorpusReader(CorpusSource source);
  ~CorpusReader();
  CorpusReader(const CorpusReader&) = delete;
  CorpusReader& operator=(const CorpusReader&) = delete;

  std::optional<std::string> next();

  std::size_t invalid_sequences() const { return invalid_sequences_; }
  std::size_t documents() const { return documents_; }

 private:
  bool is_records(const std::filesystem::path& p) const;

  CorpusSource source_;
  std::vector<std::filesystem::path> files_;
  std::size_t next_file_ = 0;
  std::unique_ptr<std::ifstream> records_;
  std::filesystem::path records_path_;
  std::size_t records_line_ = 0;
  std::size_t invalid_sequences_ = 0;
  std::size_t documents_ = 0;
};

std::vector<std::string> read_corpus(const CorpusSource& source,
                                     std::size_t* invalid_sequences = nullptr);

std::string read_file(const std::filesystem::path& path);

// ASCII-safe piece escaping: printable ASCII other than '\' and space is
// literal; '\\', '\s' (space), '\n', '\t', '\r' and '\u{HEX}' cover the rest.
std::string escape_piece(std::string_view piece);
// Throws Error(kMalformedFile) on a bad escape.
std::string unescape_piece(std::string_view escaped);

// Line formats used by the command line tool.
//   ids:    space-separated ids; unknown tokens as "<id>:<escaped text>"
//   pieces: space-separated escaped pieces
//   json:   [[id, "piece"], ...]
std::string format_ids(const Encoding& encoding, const Vocabulary& vocab);
std::string format_pieces(const Encoding& encoding);
std::string format_json(const Encoding& encoding);

Encoding parse_ids(std::string_view line, const Vocabulary& vocab);
std::vector<std::string> parse_pieces(std::string_view line);
Encoding parse_json(std::string_view line, const Vocabulary& vocab);

}  // namespace lbpe::io
