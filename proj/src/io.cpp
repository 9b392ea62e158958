#include "lbpe/io.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <json.hpp>

#include "lbpe/error.hpp"
#include "lbpe/utf8.hpp"

namespace lbpe::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string ascii_json(const std::string& s) {
  return json(s).dump(-1, ' ', /*ensure_ascii=*/true);
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedFile, what);
}

}  // namespace

std::string serialize_vocab(const Vocabulary& vocab) {
  const auto& cfg = vocab.pretokenizer();
  const auto& meta = vocab.metadata();
  std::ostringstream out;
  out << "{\n";
  out << "  \"format\": " << ascii_json(std::string(kVocabFormatName)) << ",\n";
  out << "  \"format_version\": " << kVocabFormatVersion << ",\n";
  out << "  \"pretokenizer\": {\"split_digits\": "
      << (cfg.split_digits ? "true" : "false")
      << ", \"attach_leading_space\": "
      << (cfg.attach_leading_space ? "true" : "false") << "},\n";
  out << "  \"metadata\": {\"target_vocab_size\": " << meta.target_vocab_size
      << ", \"min_pair_frequency\": " << meta.min_pair_frequency
      << ", \"merges\": " << meta.merges << ", \"documents\": "
      << meta.documents << ", \"corpus_fingerprint\": "
      << ascii_json(meta.corpus_fingerprint) << "},\n";
  out << "  \"max_token_length\": " << vocab.max_token_length() << ",\n";
  out << "  \"size\": " << vocab.size() << ",\n";
  out << "  \"tokens\": [";
  const auto& tokens = vocab.tokens();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out << (i == 0 ? "\n" : ",\n") << "    [" << tokens[i].id << ", "
        << ascii_json(tokens[i].piece) << "]";
  }
  out << (tokens.empty() ? "]\n" : "\n  ]\n");
  out << "}\n";
  return out.str();
}

Vocabulary parse_vocab(std::string_view contents) {
  if (contents.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw Error(ErrorCode::kFormatVersionUnsupported,
                "empty file has no format version");
  }
  json doc;
  try {
    doc = json::parse(contents);
  } catch (const json::parse_error& e) {
    malformed(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("format_version")) {
    throw Error(ErrorCode::kFormatVersionUnsupported,
                "missing format_version");
  }
  const auto& version = doc["format_version"];
  if (!version.is_number_integer() ||
      version.get<std::int64_t>() != kVocabFormatVersion) {
    throw Error(ErrorCode::kFormatVersionUnsupported,
                "format_version " + version.dump() + " (supported: " +
                    std::to_string(kVocabFormatVersion) + ")");
  }
  try {
    if (doc.value("format", std::string()) != kVocabFormatName) {
      malformed("format is not \"lbpe-vocab\"");
    }
    PreTokenizerConfig cfg;
    const auto& pt = doc.at("pretokenizer");
    cfg.split_digits = pt.at("split_digits").get<bool>();
    cfg.attach_leading_space = pt.at("attach_leading_space").get<bool>();

    VocabMetadata meta;
    if (doc.contains("metadata")) {
      const auto& m = doc["metadata"];
      meta.target_vocab_size = m.value("target_vocab_size", std::uint64_t{0});
      meta.min_pair_frequency = m.value("min_pair_frequency", std::uint64_t{0});
      meta.merges = m.value("merges", std::uint64_t{0});
      meta.documents = m.value("documents", std::uint64_t{0});
      meta.corpus_fingerprint = m.value("corpus_fingerprint", std::string());
    }

    const auto& arr = doc.at("tokens");
    if (!arr.is_array()) malformed("tokens is not an array");
    std::vector<Token> tokens;
    tokens.reserve(arr.size());
    for (const auto& entry : arr) {
      if (!entry.is_array() || entry.size() != 2 ||
          !entry[0].is_number_unsigned() || !entry[1].is_string()) {
        malformed("token entry " + entry.dump() + " is not [id, \"piece\"]");
      }
      tokens.push_back({entry[0].get<TokenId>(), entry[1].get<std::string>(), 0});
    }
    if (doc.contains("size") && doc["size"].get<std::size_t>() != tokens.size()) {
      malformed("size field disagrees with the token list");
    }
    const auto max_len = doc.at("max_token_length").get<std::uint32_t>();

    auto vocab = Vocabulary::from_raw(std::move(tokens), max_len, cfg,
                                      std::move(meta));
    if (auto violations = validate(vocab); !violations.empty()) {
      throw ValidationError(std::move(violations));
    }
    return vocab;
  } catch (const json::exception& e) {
    malformed(e.what());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorCode::kIoFailure, "cannot read " + path.string());
  }
  return ss.str();
}

void save_vocab(const Vocabulary& vocab, const fs::path& path) {
  const std::string text = serialize_vocab(vocab);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  }
}

Vocabulary load_vocab(const fs::path& path) {
  return parse_vocab(read_file(path));
}

std::vector<fs::path> expand_paths(const std::vector<fs::path>& paths) {
  std::vector<fs::path> out;
  for (const auto& p : paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::recursive_directory_iterator(p, ec)) {
        if (entry.is_regular_file()) found.push_back(entry.path());
      }
      if (ec) {
        throw Error(ErrorCode::kIoFailure,
                    "cannot list " + p.string() + ": " + ec.message());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p, ec)) {
      out.push_back(p);
    } else {
      throw Error(ErrorCode::kIoFailure, "no such file: " + p.string());
    }
  }
  return out;
}

CorpusReader::CorpusReader(CorpusSource source)
    : source_(std::move(source)), files_(expand_paths(source_.paths)) {}

CorpusReader::~CorpusReader() = default;

bool CorpusReader::is_records(const fs::path& p) const {
  switch (source_.format) {
    case CorpusFormat::kPlainText:
      return false;
    case CorpusFormat::kJsonLines:
      return true;
    case CorpusFormat::kAuto:
      break;
  }
  const auto ext = p.extension().string();
  return ext == ".jsonl" || ext == ".ndjson";
}

std::optional<std::string> CorpusReader::next() {
  while (true) {
    if (records_) {
      std::string line;
      while (std::getline(*records_, line)) {
        ++records_line_;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json rec;
        try {
          rec = json::parse(line);
        } catch (const json::parse_error&) {
          rec = json::parse(utf8::sanitize(line, &invalid_sequences_),
                            nullptr, /*allow_exceptions=*/false);
        }
        if (!rec.is_object() || !rec.contains(source_.text_field) ||
            !rec[source_.text_field].is_string()) {
          throw Error(ErrorCode::kIoFailure,
                      records_path_.string() + ":" +
                          std::to_string(records_line_) + ": no string field \"" +
                          source_.text_field + "\"");
        }
        ++documents_;
        return rec[source_.text_field].get<std::string>();
      }
      if (records_->bad()) {
        throw Error(ErrorCode::kIoFailure, "cannot read " + records_path_.string());
      }
      records_.reset();
    }
    if (next_file_ >= files_.size()) return std::nullopt;
    const fs::path& path = files_[next_file_++];
    if (is_records(path)) {
      records_ = std::make_unique<std::ifstream>(path, std::ios::binary);
      if (!*records_) {
        throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
      }
      records_path_ = path;
      records_line_ = 0;
      continue;
    }
    ++documents_;
    return utf8::sanitize(read_file(path), &invalid_sequences_);
  }
}

std::vector<std::string> read_corpus(const CorpusSource& source,
                                     std::size_t* invalid_sequences) {
  CorpusReader reader(source);
  std::vector<std::string> docs;
  while (auto doc = reader.next()) docs.push_back(std::move(*doc));
  if (invalid_sequences != nullptr) {
    *invalid_sequences = reader.invalid_sequences();
  }
  return docs;
}

std::string escape_piece(std::string_view piece) {
  std::string out;
  out.reserve(piece.size());
  for (char32_t cp : utf8::decode(piece).codepoints) {
    switch (cp) {
      case U'\\':
        out += "\\\\";
        break;
      case U' ':
        out += "\\s";
        break;
      case U'\n':
        out += "\\n";
        break;
      case U'\t':
        out += "\\t";
        break;
      case U'\r':
        out += "\\r";
        break;
      default:
        if (cp > 0x20 && cp < 0x7F) {
          out.push_back(static_cast<char>(cp));
        } else {
          char buf[16];
          const int n = std::snprintf(buf, sizeof buf, "\\u{%X}",
                                      static_cast<unsigned>(cp));
          out.append(buf, static_cast<std::size_t>(n));
        }
    }
  }
  return out;
}

std::string unescape_piece(std::string_view escaped) {
  std::string out;
  for (std::size_t i = 0; i < escaped.size(); ++i) {
    const char c = escaped[i];
    if (c != '\\') {
      out.push_back(c);
      continue;
    }
    if (++i >= escaped.size()) malformed("dangling backslash");
    switch (escaped[i]) {
      case '\\':
        out.push_back('\\');
        break;
      case 's':
        out.push_back(' ');
        break;
      case 'n':
        out.push_back('\n');
        break;
      case 't':
        out.push_back('\t');
        break;
      case 'r':
        out.push_back('\r');
        break;
      case 'u': {
        const auto close = escaped.find('}', i);
        if (i + 1 >= escaped.size() || escaped[i + 1] != '{' ||
            close == std::string_view::npos) {
          malformed("bad \\u escape");
        }
        const auto hex = escaped.substr(i + 2, close - i - 2);
        std::uint32_t cp = 0;
        auto [ptr, ec] =
            std::from_chars(hex.data(), hex.data() + hex.size(), cp, 16);
        if (ec != std::errc() || ptr != hex.data() + hex.size() ||
            hex.empty() || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
          malformed("bad code point in \\u escape");
        }
        utf8::append(out, cp);
        i = close;
        break;
      }
      default:
        malformed(std::string("unknown escape \\") + escaped[i]);
    }
  }
  return out;
}

namespace {

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto start = line.find_first_not_of(' ', pos);
    if (start == std::string_view::npos) break;
    auto end = line.find(' ', start);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(start, end - start));
    pos = end;
  }
  return out;
}

TokenId parse_id(std::string_view s) {
  TokenId id = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), id);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    malformed("bad token id \"" + std::string(s) + "\"");
  }
  return id;
}

void finish_counts(Encoding& e) {
  for (const auto& p : e.pieces) {
    e.source_byte_count += p.size();
    e.source_char_count += utf8::length(p);
  }
}

}  // namespace

std::string format_ids(const Encoding& encoding, const Vocabulary& vocab) {
  std::string out;
  for (std::size_t k = 0; k < encoding.ids.size(); ++k) {
    if (k != 0) out.push_back(' ');
    out += std::to_string(encoding.ids[k]);
    if (encoding.ids[k] == vocab.unknown_id()) {
      out.push_back(':');
      out += escape_piece(encoding.pieces[k]);
    }
  }
  return out;
}

std::string format_pieces(const Encoding& encoding) {
  std::string out;
  for (std::size_t k = 0; k < encoding.pieces.size(); ++k) {
    if (k != 0) out.push_back(' ');
    out += escape_piece(encoding.pieces[k]);
  }
  return out;
}

std::string format_json(const Encoding& encoding) {
  json arr = json::array();
  for (std::size_t k = 0; k < encoding.ids.size(); ++k) {
    arr.push_back(json::array({encoding.ids[k], encoding.pieces[k]}));
  }
  return arr.dump(-1, ' ', true);
}

Encoding parse_ids(std::string_view line, const Vocabulary& vocab) {
  Encoding e;
  for (auto field : split_spaces(line)) {
    const auto colon = field.find(':');
    const TokenId id = parse_id(field.substr(0, colon));
    e.ids.push_back(id);
    if (colon != std::string_view::npos) {
      if (id != vocab.unknown_id()) {
        malformed("only the unknown id carries text: \"" + std::string(field) +
                  "\"");
      }
      e.pieces.push_back(unescape_piece(field.substr(colon + 1)));
    } else if (vocab.is_known(id)) {
      e.pieces.push_back(vocab.piece(id));
    } else {
      throw Error(ErrorCode::kInvalidTokenId,
                  "token id " + std::to_string(id) + " is not in the vocabulary");
    }
  }
  finish_counts(e);
  return e;
}

std::vector<std::string> parse_pieces(std::string_view line) {
  std::vector<std::string> out;
  for (auto field : split_spaces(line)) out.push_back(unescape_piece(field));
  return out;
}

Encoding parse_json(std::string_view line, const Vocabulary& vocab) {
  Encoding e;
  json arr;
  try {
    arr = json::parse(line);
  } catch (const json::parse_error& err) {
    malformed(err.what());
  }
  if (!arr.is_array()) malformed("expected a JSON array");
  for (const auto& entry : arr) {
    if (!entry.is_array() || entry.size() != 2 ||
        !entry[0].is_number_unsigned() || !entry[1].is_string()) {
      malformed("expected [id, \"piece\"], got " + entry.dump());
    }
    const auto id = entry[0].get<TokenId>();
    if (!vocab.is_known(id) && id != vocab.unknown_id()) {
      throw Error(ErrorCode::kInvalidTokenId,
                  "token id " + std::to_string(id) + " is not in the vocabulary");
    }
    e.ids.push_back(id);
    e.pieces.push_back(entry[1].get<std::string>());
  }
  finish_counts(e);
  return e;
}

}  // namespace lbpe::io
