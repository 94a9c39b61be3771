#include "negseq/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "negseq/error.hpp"
#include "negseq/matcher.hpp"

namespace negseq {

std::string to_string(Tokenizer tokenizer) {
  return tokenizer == Tokenizer::Char ? "char" : "token";
}

namespace {

class DatabaseBuilder {
 public:
  explicit DatabaseBuilder(const InputSpec& spec) : spec_(spec) {}

  /// Adds the tokens of one line to the sequence being built.
  void append_line(std::string_view line, std::size_t line_no) {
    if (spec_.tokenizer == Tokenizer::Char) {
      for (char c : line) add_token(std::string(1, c), line_no);
      return;
    }
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) add_token(std::string(line.substr(start, i - start)), line_no);
    }
  }

  void finish_sequence() {
    if (!current_.empty()) db_.add(std::move(current_));
    current_.clear();
  }

  SequenceDatabase take() {
    finish_sequence();
    if (!rejected_.empty()) {
      std::ostringstream msg;
      msg << "FASTA records contain non-letter bytes:";
      for (unsigned char c : rejected_) {
        msg << " 0x" << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(c);
        if (std::isprint(c)) msg << "('" << static_cast<char>(c) << "')";
      }
      msg << " (first on line " << std::dec << first_rejected_line_
          << "); pass --permissive to keep them as items";
      throw IoError(msg.str());
    }
    if (db_.empty()) throw IoError("input contains no sequences");
    return std::move(db_);
  }

 private:
  void add_token(std::string token, std::size_t line_no) {
    if (token.size() > kMaxTokenBytes) {
      throw IoError("line " + std::to_string(line_no) + ": token longer than " +
                    std::to_string(kMaxTokenBytes) + " bytes");
    }
    for (char& c : token) {
      const auto uc = static_cast<unsigned char>(c);
      if (kPatternDelimiters.find(c) != std::string_view::npos || std::isspace(uc) || uc < 0x20) {
        throw IoError("line " + std::to_string(line_no) + ": byte '" + std::string(1, c) +
                      "' cannot be an item (reserved by the pattern syntax)");
      }
      if (spec_.format == InputFormat::Fasta && !spec_.permissive && !std::isalpha(uc)) {
        if (rejected_.empty()) first_rejected_line_ = line_no;
        rejected_.insert(uc);
      }
      if (spec_.case_policy == CasePolicy::FoldUpper) c = static_cast<char>(std::toupper(uc));
    }
    if (current_.size() + 1 >= std::numeric_limits<Position>::max()) {
      throw IoError("line " + std::to_string(line_no) + ": sequence exceeds the position range");
    }
    current_.push_back(db_.alphabet().intern(token));
  }

  const InputSpec& spec_;
  SequenceDatabase db_;
  std::vector<Item> current_;
  std::set<unsigned char> rejected_;
  std::size_t first_rejected_line_ = 0;
};

std::string_view strip_line(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  return line;
}

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

}  // namespace

SequenceDatabase read_database(std::istream& in, const InputSpec& spec) {
  DatabaseBuilder builder(spec);
  std::string raw;
  std::size_t line_no = 0;
  bool in_record = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = strip_line(raw);
    if (spec.format == InputFormat::Plain) {
      if (blank(line)) continue;
      builder.append_line(line, line_no);
      builder.finish_sequence();
      continue;
    }
    if (!line.empty() && line.front() == '>') {
      builder.finish_sequence();
      in_record = true;
      continue;
    }
    if (blank(line)) continue;
    if (!in_record) throw IoError("line " + std::to_string(line_no) + ": FASTA data before the first '>' header");
    std::string_view body = line;
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
    builder.append_line(body, line_no);
  }
  if (in.bad()) throw IoError("read failure");
  return builder.take();
}

SequenceDatabase read_database(const InputSpec& spec) {
  if (spec.path == "-") return read_database(std::cin, spec);
  std::ifstream in(spec.path, std::ios::binary);
  if (!in) throw IoError("cannot open input '" + spec.path + "'");
  try {
    return read_database(in, spec);
  } catch (const IoError& e) {
    throw IoError(spec.path + ": " + e.what());
  }
}

SequenceDatabase split_fixed_length(const SequenceDatabase& db, std::size_t chunk) {
  if (chunk == 0) throw std::invalid_argument("chunk length must be at least 1");
  SequenceDatabase out(db.alphabet());
  for (const auto& s : db.sequences()) {
    for (std::size_t start = 0; start < s.items.size(); start += chunk) {
      const std::size_t end = std::min(s.items.size(), start + chunk);
      out.add(std::vector<Item>(s.items.begin() + static_cast<std::ptrdiff_t>(start),
                                s.items.begin() + static_cast<std::ptrdiff_t>(end)));
    }
  }
  return out;
}

void write_plain(const SequenceDatabase& db, Tokenizer tokenizer, std::ostream& out) {
  const auto& alphabet = db.alphabet();
  for (const auto& s : db.sequences()) {
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      if (tokenizer == Tokenizer::Token && i > 0) out << ' ';
      out << alphabet.token(s.items[i]);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failure");
}

std::string database_digest(const SequenceDatabase& db) {
  std::ostringstream text;
  write_plain(db, Tokenizer::Token, text);
  const std::string bytes = text.str();

  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return hex.str();
}

namespace {

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_csv(const MiningResult& result, const ResultContext& context, std::ostream& out) {
  const auto& alphabet = context.db.alphabet();
  const GapConstraint gap = result.config.gap;
  out << "pattern,length,support,ofs,rate\n";
  for (const auto& level : result.levels) {
    for (const auto& e : level.entries) {
      const auto& r = e.record;
      out << csv_field(format_pattern(r.pattern, alphabet, gap)) << ',' << r.pattern.length() << ','
          << r.total << ',' << to_string(r.ofs) << ',' << r.rate() << '\n';
    }
  }
}

void write_json(const MiningResult& result, const ResultContext& context, std::ostream& out) {
  using nlohmann::ordered_json;
  const auto& db = context.db;
  const GapConstraint gap = result.config.gap;

  ordered_json doc;
  doc["config"] = {
      {"rho", result.config.rho.text()},
      {"gap", {{"min", gap.min_gap()}, {"max", gap.max_gap()}}},
      {"tokenizer", to_string(context.tokenizer)},
      {"positives_only", result.config.options.positives_only},
      {"max_length", result.config.options.max_length},
      {"input_digest", "sha256:" + database_digest(db)},
  };
  doc["database"] = {
      {"sequences", db.size()},
      {"total_length", db.total_length()},
      {"alphabet", db.alphabet().tokens()},
  };

  ordered_json levels = ordered_json::array();
  for (const auto& level : result.levels) {
    ordered_json patterns = ordered_json::array();
    for (const auto& e : level.entries) {
      const auto& r = e.record;
      patterns.push_back({
          {"pattern", format_pattern(r.pattern, db.alphabet(), gap)},
          {"length", r.pattern.length()},
          {"negative", !r.pattern.is_positive()},
          {"support", r.total},
          {"per_sequence", r.per_sequence},
          {"ofs", to_string(r.ofs)},
          {"rate", r.rate()},
      });
    }
    levels.push_back({{"length", level.length}, {"patterns", std::move(patterns)}});
  }
  doc["levels"] = std::move(levels);

  ordered_json stat_levels = ordered_json::array();
  for (const auto& s : result.stats.levels) {
    ordered_json entry = {
        {"length", s.length},
        {"candidates", s.candidates},
        {"frequent", s.frequent},
        {"kv_bytes", s.kv_bytes},
    };
    if (s.baseline) {
      entry["baseline"] = {{"join", s.baseline->join},
                           {"enumeration", s.baseline->enumeration},
                           {"classic", s.baseline->classic}};
    }
    stat_levels.push_back(std::move(entry));
  }
  doc["stats"] = {
      {"patterns", result.pattern_count()},
      {"total_candidates", result.stats.total_candidates()},
      {"peak_kv_bytes", result.stats.peak_kv_bytes},
      {"levels", std::move(stat_levels)},
  };
  out << doc.dump(2) << '\n';
}

}  // namespace

void write_results(const MiningResult& result, const ResultContext& context, OutputFormat format,
                   std::ostream& out) {
  if (format == OutputFormat::Csv) {
    write_csv(result, context, out);
  } else {
    write_json(result, context, out);
  }
  if (!out) throw IoError("write failure");
}

}  // namespace negseq
