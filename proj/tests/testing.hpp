#pragma once

// Shared fixtures and test-only oracles.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "negseq/matcher.hpp"
#include "negseq/miner.hpp"
#include "negseq/pattern.hpp"
#include "negseq/sequence.hpp"
#include "negseq/threshold.hpp"

namespace negseq::testing {

/// {baacaac, ababccbb}: L = 15, alphabet in first-appearance order b, a, c.
inline SequenceDatabase example_database() {
  const std::vector<std::string> lines{"baacaac", "ababccbb"};
  return SequenceDatabase::from_strings(lines);
}

inline const GapConstraint kGap01{0, 1};

inline Pattern pat(const SequenceDatabase& db, std::string_view text,
                   GapConstraint gap = kGap01) {
  return parse_pattern(text, db.alphabet(), gap);
}

inline Item item(const SequenceDatabase& db, std::string_view token) {
  return *db.alphabet().find(token);
}

/// Every pattern over `sigma` items with 1 <= length <= max_length and every
/// combination of gap annotations.
inline std::vector<Pattern> all_patterns(std::uint32_t sigma, std::size_t max_length) {
  std::vector<Pattern> out;
  std::vector<Pattern> frontier;
  for (std::uint32_t a = 0; a < sigma; ++a) frontier.push_back(Pattern::single(Item{a}));
  for (std::size_t m = 1; m <= max_length; ++m) {
    out.insert(out.end(), frontier.begin(), frontier.end());
    if (m == max_length) break;
    std::vector<Pattern> next;
    for (const auto& p : frontier) {
      for (std::uint32_t a = 0; a < sigma; ++a) {
        for (std::int64_t e = -1; e < static_cast<std::int64_t>(sigma); ++e) {
          Pattern t = p;
          t.positives.push_back(Item{a});
          t.negatives.push_back(e < 0 ? std::nullopt
                                      : std::optional<Item>(Item{static_cast<std::uint32_t>(e)}));
          next.push_back(std::move(t));
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

struct OracleRecord {
  Count total = 0;
  std::vector<Count> per_sequence;
};

/// sup / (L * W^(m-1)) >= rho, via exact rationals rather than the library's
/// integer cross-multiplication.
inline bool oracle_frequent(Count support, std::uint64_t total_length, std::uint64_t width,
                            std::size_t length, const Threshold& rho) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  cpp_int ofs = total_length;
  for (std::size_t i = 1; i < length; ++i) ofs *= width;
  if (ofs == 0) return false;
  return cpp_rational(cpp_int(support), ofs) >=
         cpp_rational(rho.numerator(), rho.denominator());
}

/// Exhaustive enumerate-and-test miner: every pattern up to max_length,
/// counted by brute force.
inline std::map<Pattern, OracleRecord> oracle_mine(const SequenceDatabase& db, const Threshold& rho,
                                                   GapConstraint gap, std::size_t max_length,
                                                   bool positives_only = false) {
  std::map<Pattern, OracleRecord> out;
  const auto sigma = static_cast<std::uint32_t>(db.alphabet().size());
  for (const auto& p : all_patterns(sigma, max_length)) {
    if (positives_only && !p.is_positive()) continue;
    OracleRecord rec;
    for (const auto& s : db.sequences()) {
      rec.per_sequence.push_back(brute_force_support(p, s, gap, false).support);
      rec.total += rec.per_sequence.back();
    }
    if (rec.total > 0 &&
        oracle_frequent(rec.total, db.total_length(), gap.width(), p.length(), rho)) {
      out.emplace(p, std::move(rec));
    }
  }
  return out;
}

inline std::map<Pattern, OracleRecord> as_map(const MiningResult& result) {
  std::map<Pattern, OracleRecord> out;
  for (const auto& level : result.levels) {
    for (const auto& e : level.entries) {
      out.emplace(e.pattern(), OracleRecord{e.record.total, e.record.per_sequence});
    }
  }
  return out;
}

inline bool operator==(const OracleRecord& a, const OracleRecord& b) {
  return a.total == b.total && a.per_sequence == b.per_sequence;
}

/// Random database over `sigma` single-character items 'a', 'b', ...
inline SequenceDatabase random_database(std::mt19937_64& rng, std::uint32_t sigma,
                                        std::size_t total_length, std::size_t max_sequences) {
  std::uniform_int_distribution<std::uint32_t> pick(0, sigma - 1);
  std::uniform_int_distribution<std::size_t> count(1, max_sequences);
  const std::size_t n = std::min(count(rng), std::max<std::size_t>(1, total_length));
  std::vector<std::string> lines(n);
  for (std::size_t i = 0; i < total_length; ++i) {
    lines[i % n] += static_cast<char>('a' + pick(rng));
  }
  std::erase_if(lines, [](const std::string& l) { return l.empty(); });
  return SequenceDatabase::from_strings(lines);
}

inline Pattern random_pattern(std::mt19937_64& rng, std::uint32_t sigma, std::size_t length,
                              double negative_probability = 0.4) {
  std::uniform_int_distribution<std::uint32_t> pick(0, sigma - 1);
  std::bernoulli_distribution negative(negative_probability);
  Pattern p;
  for (std::size_t j = 0; j < length; ++j) {
    p.positives.push_back(Item{pick(rng)});
    if (j > 0) {
      p.negatives.push_back(negative(rng) ? std::optional<Item>(Item{pick(rng)}) : std::nullopt);
    }
  }
  return p;
}

}  // namespace negseq::testing
