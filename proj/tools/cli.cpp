#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "lbpe/error.hpp"
#include "lbpe/io.hpp"
#include "lbpe/metrics.hpp"
#include "lbpe/train.hpp"

namespace lbpe::cli {
namespace {

namespace fs = std::filesystem;

// Usage problems detected after CLI11 parsing (bad enum values and such).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string percent(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.4f%%", *v);
  return buf;
}

std::string signed_int(std::int64_t v) {
  return (v > 0 ? "+" : "") + std::to_string(v);
}

EncodeMode mode_from(const std::string& name) {
  auto mode = parse_mode(name);
  if (!mode) throw UsageError("--mode must be bpe or lbpe, got \"" + name + "\"");
  return *mode;
}

io::CorpusFormat corpus_format_from(const std::string& name) {
  if (name == "auto") return io::CorpusFormat::kAuto;
  if (name == "text") return io::CorpusFormat::kPlainText;
  if (name == "jsonl") return io::CorpusFormat::kJsonLines;
  throw UsageError("--format must be auto, text or jsonl");
}

// Whole input, either from `path` or the provided stream.
std::string slurp(const std::string& path, std::istream& in) {
  if (!path.empty() && path != "-") return io::read_file(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Lines without their '\n'. A final line without a terminator is kept.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

struct CorpusOptions {
  std::vector<std::string> paths;
  std::string format = "auto";
  std::string text_field = "text";

  void attach(CLI::App* app, bool required) {
    app->add_option("--corpus", paths, "Corpus files or directories")
        ->required(required);
    app->add_option("--format", format, "Corpus format: auto|text|jsonl")
        ->capture_default_str();
    app->add_option("--text-field", text_field,
                    "Record field holding the text (jsonl)")
        ->capture_default_str();
  }

  io::CorpusSource source() const {
    io::CorpusSource s;
    for (const auto& p : paths) s.paths.emplace_back(p);
    s.format = corpus_format_from(format);
    s.text_field = text_field;
    return s;
  }

  std::vector<std::string> read(std::ostream& err) const {
    std::size_t invalid = 0;
    auto docs = io::read_corpus(source(), &invalid);
    if (invalid > 0) {
      err << "warning: replaced " << invalid << " invalid UTF-8 sequence(s)\n";
    }
    return docs;
  }
};

int cmd_train(const CorpusOptions& corpus, std::size_t vocab_size,
              std::uint64_t min_pair_freq, bool no_split_digits,
              bool no_leading_space, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  TrainerConfig config;
  config.target_vocab_size = vocab_size;
  config.min_pair_frequency = min_pair_freq;
  config.pretokenizer.split_digits = !no_split_digits;
  config.pretokenizer.attach_leading_space = !no_leading_space;

  PretokenCounter counter(config.pretokenizer);
  io::CorpusReader reader(corpus.source());
  while (auto doc = reader.next()) counter.add_document(*doc);
  if (reader.invalid_sequences() > 0) {
    err << "warning: replaced " << reader.invalid_sequences()
        << " invalid UTF-8 sequence(s)\n";
  }
  const auto result = train(counter, config);
  io::save_vocab(result.vocab, out_path);
  out << "documents: " << counter.documents() << "\n";
  out << "vocab_size: " << result.vocab.size() << "\n";
  out << "merges: " << result.merges.size() << "\n";
  out << "max_token_length: " << result.vocab.max_token_length() << "\n";
  return kExitOk;
}

std::string format_encoding(const Encoding& e, const Vocabulary& vocab,
                            const std::string& output) {
  if (output == "pieces") return io::format_pieces(e);
  if (output == "json") return io::format_json(e);
  return io::format_ids(e, vocab);
}

int cmd_encode(const std::string& vocab_path, const std::string& mode_name,
               const std::string& output, const std::string& input,
               bool document, unsigned jobs, std::istream& in,
               std::ostream& out) {
  const EncodeMode mode = mode_from(mode_name);
  if (output != "ids" && output != "pieces" && output != "json") {
    throw UsageError("--output must be ids, pieces or json");
  }
  const Vocabulary vocab = io::load_vocab(vocab_path);
  const std::string text = slurp(input, in);
  if (document) {
    if (!text.empty()) {
      out << format_encoding(encode_text(text, vocab, mode), vocab, output)
          << "\n";
    }
    return kExitOk;
  }

  const auto lines = split_lines(text);
  std::vector<std::string> rendered(lines.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      rendered[i] =
          format_encoding(encode_text(lines[i], vocab, mode), vocab, output);
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(
                                                   std::max<std::size_t>(
                                                       lines.size(), 1))));
  if (jobs == 1) {
    work(0, lines.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (lines.size() + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      const std::size_t begin = std::min(lines.size(), j * chunk);
      const std::size_t end = std::min(lines.size(), begin + chunk);
      pool.emplace_back(work, begin, end);
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& r : rendered) out << r << "\n";
  return kExitOk;
}

int cmd_decode(const std::string& vocab_path, const std::string& format,
               const std::string& input, bool document, std::istream& in,
               std::ostream& out) {
  if (format != "ids" && format != "pieces" && format != "json") {
    throw UsageError("--format must be ids, pieces or json");
  }
  const Vocabulary vocab = io::load_vocab(vocab_path);
  const std::string text = slurp(input, in);
  for (auto line : split_lines(text)) {
    if (format == "pieces") {
      for (const auto& p : io::parse_pieces(line)) out << p;
    } else if (format == "json") {
      out << decode(io::parse_json(line, vocab), vocab);
    } else {
      out << decode(io::parse_ids(line, vocab), vocab);
    }
    if (!document) out << "\n";
  }
  return kExitOk;
}

void print_histogram(const LengthHistogram& h, std::ostream& out) {
  out << std::left << std::setw(8) << "length" << std::right << std::setw(12)
      << "tokens" << std::setw(12) << "share" << "\n";
  for (std::size_t b = 0; b < h.buckets().size(); ++b) {
    const double share =
        h.total_tokens() == 0
            ? 0.0
            : 100.0 * static_cast<double>(h.count(b)) /
                  static_cast<double>(h.total_tokens());
    out << std::left << std::setw(8) << h.buckets()[b].label() << std::right
        << std::setw(12) << h.count(b) << std::setw(11) << fixed4(share)
        << "%\n";
  }
}

int cmd_stats(const std::string& vocab_path, const std::string& mode_name,
              const CorpusOptions& corpus, std::ostream& out,
              std::ostream& err) {
  const EncodeMode mode = mode_from(mode_name);
  const Vocabulary vocab = io::load_vocab(vocab_path);
  const auto docs = corpus.read(err);
  const auto stats = measure(docs, vocab, mode);
  out << "mode: " << to_string(mode) << "\n";
  out << "documents: " << docs.size() << "\n";
  out << "total_bytes: " << stats.compression.total_bytes << "\n";
  out << "total_tokens: " << stats.compression.total_tokens << "\n";
  out << "bytes_per_token: " << fixed4(stats.compression.bytes_per_token())
      << "\n\n";
  print_histogram(stats.histogram, out);
  return kExitOk;
}

int cmd_compare(const std::string& vocab_path, const CorpusOptions& corpus,
                std::ostream& out, std::ostream& err) {
  const Vocabulary vocab = io::load_vocab(vocab_path);
  const auto docs = corpus.read(err);
  const auto r = compare_encoders(docs, vocab);
  const auto& b = r.baseline.compression;
  const auto& c = r.candidate.compression;

  out << "documents: " << docs.size() << "\n";
  out << "vocab_size: " << vocab.size() << "\n\n";
  out << std::left << std::setw(16) << "" << std::right << std::setw(14)
      << "BPE" << std::setw(14) << "LBPE" << "\n";
  out << std::left << std::setw(16) << "bytes" << std::right << std::setw(14)
      << b.total_bytes << std::setw(14) << c.total_bytes << "\n";
  out << std::left << std::setw(16) << "tokens" << std::right << std::setw(14)
      << b.total_tokens << std::setw(14) << c.total_tokens << "\n";
  out << std::left << std::setw(16) << "bytes/token" << std::right
      << std::setw(14) << fixed4(b.bytes_per_token()) << std::setw(14)
      << fixed4(c.bytes_per_token()) << "\n\n";

  out << std::left << std::setw(8) << "length" << std::right << std::setw(12)
      << "BPE" << std::setw(12) << "LBPE" << std::setw(10) << "delta"
      << std::setw(12) << "relative" << "\n";
  for (const auto& d : r.buckets) {
    out << std::left << std::setw(8) << d.range.label() << std::right
        << std::setw(12) << d.baseline << std::setw(12) << d.candidate
        << std::setw(10) << signed_int(d.count_delta) << std::setw(12)
        << percent(d.relative_percent) << "\n";
  }
  out << std::left << std::setw(8) << "total" << std::right << std::setw(12)
      << b.total_tokens << std::setw(12) << c.total_tokens << std::setw(10)
      << signed_int(r.token_delta) << std::setw(12)
      << percent(r.token_relative_percent) << "\n";
  out << "\nrelative = 100 * (LBPE - BPE) / BPE\n";
  return kExitOk;
}

int cmd_bench(const std::string& vocab_path, const CorpusOptions& corpus,
              const std::vector<std::size_t>& sizes, std::size_t runs,
              const std::vector<std::string>& impl_names, std::ostream& out,
              std::ostream& err) {
  const Vocabulary vocab = io::load_vocab(vocab_path);
  const auto docs = corpus.read(err);
  BenchOptions options;
  options.runs = runs;
  options.impls.clear();
  for (const auto& name : impl_names) {
    bool found = false;
    for (auto impl : {BenchImpl::kLbpe, BenchImpl::kBpeNaive, BenchImpl::kBpe,
                      BenchImpl::kLbpeNaive}) {
      if (name == to_string(impl)) {
        options.impls.push_back(impl);
        found = true;
      }
    }
    if (!found) throw UsageError("unknown --impl \"" + name + "\"");
  }
  auto sorted = sizes;
  std::sort(sorted.begin(), sorted.end());
  const auto rows = bench_scaling(vocab, docs, sorted, options);

  // Timings go to stderr so stdout stays reproducible.
  out << std::left << std::setw(12) << "impl" << std::right << std::setw(10)
      << "bytes" << std::setw(10) << "units" << std::setw(10) << "tokens"
      << "\n";
  err << std::left << std::setw(12) << "impl" << std::right << std::setw(10)
      << "bytes" << std::setw(14) << "median_ms" << std::setw(10) << "ratio"
      << "\n";
  for (const auto& row : rows) {
    out << std::left << std::setw(12) << to_string(row.impl) << std::right
        << std::setw(10) << row.bytes << std::setw(10) << row.units
        << std::setw(10) << row.tokens << "\n";
    err << std::left << std::setw(12) << to_string(row.impl) << std::right
        << std::setw(10) << row.bytes << std::setw(14)
        << fixed4(row.median_seconds * 1000.0) << std::setw(10)
        << (row.growth_ratio ? fixed4(*row.growth_ratio) : std::string("-"))
        << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Subword tokenizer: BPE training, rank-first BPE and "
               "long-token-first LBPE encoding, and encoder metrics",
               "lbpe"};
  app.require_subcommand(1);

  // train
  CorpusOptions train_corpus;
  std::size_t vocab_size = 0;
  std::uint64_t min_pair_freq = 2;
  bool no_split_digits = false;
  bool no_leading_space = false;
  std::string train_out;
  auto* train_cmd = app.add_subcommand("train", "Train a BPE vocabulary");
  train_corpus.attach(train_cmd, true);
  train_cmd->add_option("--vocab-size", vocab_size, "Target vocabulary size")
      ->required();
  train_cmd->add_option("--min-pair-freq", min_pair_freq,
                        "Stop when the best pair is rarer than this")
      ->capture_default_str();
  train_cmd->add_flag("--no-split-digits", no_split_digits,
                      "Keep digit runs together");
  train_cmd->add_flag("--no-leading-space", no_leading_space,
                      "Do not fuse a space onto the following word");
  train_cmd->add_option("--out", train_out, "Output vocabulary file")
      ->required();

  // encode
  std::string vocab_path;
  std::string mode_name;
  std::string output = "ids";
  std::string input;
  bool document = false;
  unsigned jobs = 1;
  auto* encode_cmd = app.add_subcommand("encode", "Encode text line by line");
  encode_cmd->add_option("--vocab", vocab_path, "Vocabulary file")->required();
  encode_cmd->add_option("--mode", mode_name, "bpe|lbpe")->required();
  encode_cmd->add_option("--output", output, "ids|pieces|json")
      ->capture_default_str();
  encode_cmd->add_option("--input", input, "Input file (default stdin)");
  encode_cmd->add_flag("--document", document,
                       "Encode the whole input as one text");
  encode_cmd->add_option("--jobs", jobs, "Worker threads")
      ->capture_default_str()
      ->check(CLI::Range(1u, 256u));

  // decode
  std::string decode_format = "ids";
  auto* decode_cmd = app.add_subcommand("decode", "Decode encoder output");
  decode_cmd->add_option("--vocab", vocab_path, "Vocabulary file")->required();
  decode_cmd->add_option("--format", decode_format, "ids|pieces|json")
      ->capture_default_str();
  decode_cmd->add_option("--input", input, "Input file (default stdin)");
  decode_cmd->add_flag("--document", document,
                       "Input came from encode --document");

  // stats
  CorpusOptions stats_corpus;
  auto* stats_cmd =
      app.add_subcommand("stats", "Token length distribution and compression");
  stats_cmd->add_option("--vocab", vocab_path, "Vocabulary file")->required();
  stats_cmd->add_option("--mode", mode_name, "bpe|lbpe")->required();
  stats_corpus.attach(stats_cmd, true);

  // compare
  CorpusOptions compare_corpus;
  auto* compare_cmd =
      app.add_subcommand("compare", "Compare BPE and LBPE on a corpus");
  compare_cmd->add_option("--vocab", vocab_path, "Vocabulary file")->required();
  compare_corpus.attach(compare_cmd, true);

  // bench
  CorpusOptions bench_corpus;
  std::vector<std::size_t> sizes = {65536, 131072};
  std::size_t runs = 5;
  std::vector<std::string> impls = {"lbpe", "bpe-naive"};
  auto* bench_cmd =
      app.add_subcommand("bench", "Encoder runtime against text length");
  bench_cmd->add_option("--vocab", vocab_path, "Vocabulary file")->required();
  bench_corpus.attach(bench_cmd, true);
  bench_cmd->add_option("--sizes", sizes, "Text sizes in bytes")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--runs", runs, "Timed runs per size (median)")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000}));
  bench_cmd->add_option("--impl", impls, "lbpe,bpe-naive,bpe,lbpe-naive")
      ->delimiter(',')
      ->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) {
      return cmd_train(train_corpus, vocab_size, min_pair_freq, no_split_digits,
                       no_leading_space, train_out, out, err);
    }
    if (*encode_cmd) {
      return cmd_encode(vocab_path, mode_name, output, input, document, jobs,
                        in, out);
    }
    if (*decode_cmd) {
      return cmd_decode(vocab_path, decode_format, input, document, in, out);
    }
    if (*stats_cmd) return cmd_stats(vocab_path, mode_name, stats_corpus, out, err);
    if (*compare_cmd) return cmd_compare(vocab_path, compare_corpus, out, err);
    if (*bench_cmd) {
      return cmd_bench(vocab_path, bench_corpus, sizes, runs, impls, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace lbpe::cli
