#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include "negseq/alphabet.hpp"
#include "negseq/miner.hpp"
#include "negseq/sequence.hpp"

namespace negseq {

enum class InputFormat { Plain, Fasta };
enum class CasePolicy { Preserve, FoldUpper };
enum class OutputFormat { Json, Csv };

inline constexpr std::size_t kMaxTokenBytes = 4096;

struct InputSpec {
  std::string path = "-";  // "-" reads standard input
  InputFormat format = InputFormat::Plain;
  Tokenizer tokenizer = Tokenizer::Char;
  CasePolicy case_policy = CasePolicy::Preserve;
  /// FASTA only: accept non-letter bytes as ordinary items instead of failing.
  bool permissive = false;
};

/// Throws IoError when the input cannot be read, holds no sequences, or has
/// malformed content (the message names the line).
SequenceDatabase read_database(const InputSpec& spec);
SequenceDatabase read_database(std::istream& in, const InputSpec& spec);

/// Cuts every sequence into consecutive pieces of `chunk` items; a shorter
/// tail is kept as its own sequence. Throws std::invalid_argument for chunk 0.
SequenceDatabase split_fixed_length(const SequenceDatabase& db, std::size_t chunk);

/// One sequence per line; tokens are space-separated under the token tokenizer.
void write_plain(const SequenceDatabase& db, Tokenizer tokenizer, std::ostream& out);

/// Hex SHA-256 over the database's token stream.
std::string database_digest(const SequenceDatabase& db);

struct ResultContext {
  const SequenceDatabase& db;
  Tokenizer tokenizer = Tokenizer::Char;
};

/// CSV: header `pattern,length,support,ofs,rate`, one row per pattern in level
/// order. JSON: config echo, levels, and the deterministic parts of the stats.
/// Output is byte-identical for identical results.
void write_results(const MiningResult& result, const ResultContext& context, OutputFormat format,
                   std::ostream& out);

std::string to_string(Tokenizer tokenizer);

}  // namespace negseq
