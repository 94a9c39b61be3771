#include "negseq/cli.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "negseq/error.hpp"
#include "negseq/io.hpp"
#include "negseq/matcher.hpp"
#include "negseq/miner.hpp"
#include "negseq/pattern.hpp"
#include "negseq/threshold.hpp"

namespace negseq::cli {

namespace {

struct Config {
  InputSpec input;
  std::string rho;
  std::string gap;
  std::size_t max_length = 20;
  bool positives_only = false;
  std::string output;
  OutputFormat out_format = OutputFormat::Csv;
  unsigned workers = 1;
  bool verbose = false;
  std::string pattern;
  std::size_t chunk = 0;
};

GapConstraint parse_gap(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ConfigError("--gap expects M,N, got '" + text + "'");
  auto number = [&](std::string_view part) -> std::uint32_t {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) {
      throw ConfigError("--gap expects M,N with unsigned integers, got '" + text + "'");
    }
    return v;
  };
  const std::string_view view(text);
  const auto lo = number(view.substr(0, comma));
  const auto hi = number(view.substr(comma + 1));
  if (lo > hi) throw ConfigError("--gap M,N needs M <= N, got '" + text + "'");
  return GapConstraint(lo, hi);
}

Threshold parse_rho(const std::string& text) {
  try {
    return Threshold::parse(text);
  } catch (const ParseError&) {
    throw ConfigError("--rho expects a plain decimal in (0, 1] such as 0.013, got '" + text + "'");
  }
}

void add_input_options(CLI::App& app, Config& cfg) {
  app.add_option("--input", cfg.input.path, "Input file, '-' for standard input")
      ->default_val("-");
  app.add_option("--format", cfg.input.format, "Input format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, InputFormat>{{"plain", InputFormat::Plain},
                                             {"fasta", InputFormat::Fasta}}))
      ->option_text("plain|fasta");
  app.add_option("--tokenizer", cfg.input.tokenizer, "Item tokenizer")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Tokenizer>{
          {"char", Tokenizer::Char}, {"token", Tokenizer::Token}}))
      ->option_text("char|token");
  app.add_option("--case", cfg.input.case_policy, "Case policy")
      ->transform(CLI::CheckedTransformer(std::map<std::string, CasePolicy>{
          {"preserve", CasePolicy::Preserve}, {"upper", CasePolicy::FoldUpper}}))
      ->option_text("preserve|upper");
  app.add_flag("--permissive", cfg.input.permissive,
               "Keep non-letter FASTA bytes as items instead of failing");
}

void write_to(const std::string& path, std::ostream& fallback,
              const std::function<void(std::ostream&)>& writer) {
  if (path.empty() || path == "-") {
    writer(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open output '" + path + "'");
  writer(file);
  file.close();
  if (!file) throw IoError("write failure on '" + path + "'");
}

int run_mine(const Config& cfg, std::ostream& out, std::ostream& err) {
  const auto rho = parse_rho(cfg.rho);
  const auto gap = parse_gap(cfg.gap);
  if (cfg.max_length == 0) throw ConfigError("--max-len must be at least 1");
  const auto db = read_database(cfg.input);

  MiningOptions options;
  options.max_length = cfg.max_length;
  options.positives_only = cfg.positives_only;
  options.workers = std::max(1u, cfg.workers);

  const auto start = std::chrono::steady_clock::now();
  const MiningResult result = mine(db, rho, gap, options);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  write_to(cfg.output, out, [&](std::ostream& os) {
    write_results(result, ResultContext{db, cfg.input.tokenizer}, cfg.out_format, os);
  });

  err << "sequences " << db.size() << ", total length " << db.total_length() << ", items "
      << db.alphabet().size() << ", rho " << rho.text() << ", gap [" << gap.min_gap() << ","
      << gap.max_gap() << "]\n";
  for (const auto& level : result.stats.levels) {
    err << "level " << level.length << ": candidates " << level.candidates << ", frequent "
        << level.frequent << ", " << std::fixed << std::setprecision(3) << level.seconds << "s";
    if (cfg.verbose && level.baseline) {
      err << " (enumeration would try " << level.baseline->enumeration << ", classic "
          << level.baseline->classic << ")";
    }
    err << '\n';
  }
  err << "total: " << result.pattern_count() << " patterns, " << result.stats.total_candidates()
      << " candidates, peak key-value memory " << result.stats.peak_kv_bytes << " bytes, "
      << std::fixed << std::setprecision(3) << elapsed << "s\n";
  return kOk;
}

int run_support(const Config& cfg, std::ostream& out) {
  const auto gap = parse_gap(cfg.gap);
  std::optional<Threshold> rho;
  if (!cfg.rho.empty()) rho = parse_rho(cfg.rho);
  const auto db = read_database(cfg.input);
  Pattern pattern;
  try {
    pattern = parse_pattern(cfg.pattern, db.alphabet(), gap, cfg.input.tokenizer);
  } catch (const ParseError& e) {
    throw ConfigError("pattern '" + cfg.pattern + "' " + e.what());
  }

  const Wide ofs = ofs_total(db.total_length(), gap.width(), pattern.length());
  std::vector<OccurrenceCount> counts;
  Count total = 0;
  for (const auto& s : db.sequences()) {
    counts.push_back(brute_force_support(pattern, s, gap, cfg.verbose));
    total += counts.back().support;
  }

  out << "pattern: " << format_pattern(pattern, db.alphabet(), gap) << '\n';
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out << "sequence " << i + 1 << ": " << counts[i].support << '\n';
  }
  out << "support: " << total << '\n';
  out << "ofs: " << to_string(ofs) << '\n';
  out << "rate: " << format_rate(total, ofs) << '\n';
  if (rho) {
    out << "frequent: " << (is_frequent(total, ofs, *rho) ? "yes" : "no") << " (rho "
        << rho->text() << ")\n";
  }
  if (cfg.verbose) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i].occurrences.empty()) continue;
      out << "occurrences in sequence " << i + 1 << ":";
      for (const auto& occ : counts[i].occurrences) {
        out << " <";
        for (std::size_t k = 0; k < occ.positions.size(); ++k) {
          out << (k ? "," : "") << occ.positions[k];
        }
        out << '>';
      }
      out << '\n';
    }
  }
  return kOk;
}

int run_split(const Config& cfg, std::ostream& out) {
  if (cfg.chunk == 0) throw ConfigError("--chunk must be at least 1");
  const auto db = read_database(cfg.input);
  const auto pieces = split_fixed_length(db, cfg.chunk);
  write_to(cfg.output, out,
           [&](std::ostream& os) { write_plain(pieces, cfg.input.tokenizer, os); });
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mine frequent positive and negative sequential patterns with gap constraints"};
  app.require_subcommand(1);
  Config cfg;

  auto* mine_cmd = app.add_subcommand("mine", "Mine all frequent patterns");
  add_input_options(*mine_cmd, cfg);
  mine_cmd->add_option("--rho", cfg.rho, "Minimum support rate, a decimal in (0, 1]")->required();
  mine_cmd->add_option("--gap", cfg.gap, "Gap constraint M,N")->required();
  mine_cmd->add_option("--max-len", cfg.max_length, "Longest pattern to mine")->default_val(20);
  mine_cmd->add_flag("--positives-only", cfg.positives_only, "Skip negative patterns");
  mine_cmd->add_option("--output", cfg.output, "Result file (default standard output)");
  mine_cmd->add_option("--out-format", cfg.out_format, "Result format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, OutputFormat>{
          {"json", OutputFormat::Json}, {"csv", OutputFormat::Csv}}))
      ->option_text("json|csv");
  mine_cmd->add_option("--workers", cfg.workers, "Worker threads")->default_val(1);
  mine_cmd->add_flag("--verbose", cfg.verbose, "Report baseline candidate counts");

  auto* support_cmd = app.add_subcommand("support", "Count one pattern's occurrences");
  add_input_options(*support_cmd, cfg);
  support_cmd->add_option("pattern", cfg.pattern, "Pattern such as a[0,1]a[0,1,!b]c")->required();
  support_cmd->add_option("--gap", cfg.gap, "Gap constraint M,N")->required();
  support_cmd->add_option("--rho", cfg.rho, "Also report whether the pattern is frequent");
  support_cmd->add_flag("--verbose", cfg.verbose, "Print every occurrence");

  auto* split_cmd = app.add_subcommand("split", "Cut sequences into fixed-length pieces");
  add_input_options(*split_cmd, cfg);
  split_cmd->add_option("--chunk", cfg.chunk, "Piece length")->required();
  split_cmd->add_option("--output", cfg.output, "Output file (default standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*mine_cmd) return run_mine(cfg, out, err);
    if (*support_cmd) return run_support(cfg, out);
    return run_split(cfg, out);
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return kOverflow;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace negseq::cli
