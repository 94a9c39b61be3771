#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "negseq/matcher.hpp"
#include "negseq/pattern.hpp"
#include "negseq/sequence.hpp"
#include "negseq/threshold.hpp"

namespace negseq {

struct SupportRecord {
  Pattern pattern;
  std::vector<Count> per_sequence;
  Count total = 0;
  Wide ofs = 0;

  std::string rate() const { return format_rate(total, ofs); }
};

struct FrequentEntry {
  SupportRecord record;
  std::vector<KeyValueArray> arrays;  // one per sequence

  const Pattern& pattern() const noexcept { return record.pattern; }
};

/// Frequent patterns of one length, in canonical pattern order.
struct FrequentLevel {
  std::size_t length = 0;
  std::vector<FrequentEntry> entries;

  bool empty() const noexcept { return entries.empty(); }
  std::size_t size() const noexcept { return entries.size(); }
  const FrequentEntry* find(const Pattern& p) const;
};

/// Candidate counts that alternative generation schemes would produce for a level.
struct BaselineCounts {
  std::uint64_t join = 0;
  std::uint64_t enumeration = 0;
  std::uint64_t classic = 0;

  friend bool operator==(const BaselineCounts&, const BaselineCounts&) = default;
};

/// enumeration = previous * (sigma + sigma^2): every pattern extended by every
/// item, each extension also tried with every item as the new gap's negative.
/// classic = positives * (1 + sigma^2): positive candidates first, then sigma^2
/// negative variants of each.
BaselineCounts baseline_candidate_counts(std::uint64_t join_observed,
                                         std::uint64_t previous_level_size, std::uint64_t sigma,
                                         std::uint64_t positive_candidates);

struct LevelStats {
  std::size_t length = 0;
  std::uint64_t candidates = 0;
  std::uint64_t frequent = 0;
  double seconds = 0.0;
  std::uint64_t kv_bytes = 0;  // key-value storage retained for this level
  std::optional<BaselineCounts> baseline;
};

struct MiningStats {
  std::vector<LevelStats> levels;
  std::uint64_t peak_kv_bytes = 0;

  std::uint64_t total_candidates() const;
};

/// Called once per evaluated candidate, in deterministic order, from the
/// calling thread.
using CandidateObserver =
    std::function<void(const Pattern& pattern, std::span<const Count> per_sequence)>;

struct MiningOptions {
  std::size_t max_length = 20;
  bool positives_only = false;
  unsigned workers = 1;
  CandidateObserver observer;
};

struct MiningConfig {
  Threshold rho;
  GapConstraint gap;
  MiningOptions options;
};

struct MiningResult {
  MiningConfig config;
  std::vector<FrequentLevel> levels;  // lengths 1, 2, ...; never ends in an empty level
  MiningStats stats;

  std::size_t pattern_count() const;
};

/// Level-wise miner over one database. Builds the per-sequence item indexes
/// once and reuses them for every level.
class Miner {
 public:
  Miner(const SequenceDatabase& db, Threshold rho, GapConstraint gap, MiningOptions options = {});

  /// Items whose occurrence count reaches rho * L.
  FrequentLevel frequent_items(LevelStats* stats = nullptr) const;

  /// Every pair of frequent items joined by a gap; each frequent positive pair
  /// is then tried with every alphabet item as the gap's negative.
  FrequentLevel length_two(const FrequentLevel& items, LevelStats* stats = nullptr) const;

  /// Joins every (p, q) of `level` with suffix(p) == prefix(q). Throws
  /// OverflowError if the next level's offset total exceeds 128 bits.
  FrequentLevel extend(const FrequentLevel& level, LevelStats* stats = nullptr) const;

  /// Runs every level until one comes back empty or max_length is reached.
  MiningResult run() const;

  const SequenceDatabase& database() const noexcept { return db_; }
  std::span<const ItemIndex> indexes() const noexcept { return indexes_; }

 private:
  struct Candidate;
  struct Evaluated;

  std::vector<Evaluated> evaluate(std::span<const Candidate> candidates, Wide ofs) const;
  FrequentLevel assemble(std::size_t length, std::span<const Candidate> candidates,
                         std::vector<Evaluated> evaluated, LevelStats* stats) const;

  const SequenceDatabase& db_;
  Threshold rho_;
  GapConstraint gap_;
  MiningOptions options_;
  std::vector<ItemIndex> indexes_;
};

FrequentLevel mine_frequent_items(const SequenceDatabase& db, const Threshold& rho);
FrequentLevel mine_length_two(const SequenceDatabase& db, const Threshold& rho, GapConstraint gap,
                              const FrequentLevel& items, bool positives_only = false);
FrequentLevel mine_next_level(const SequenceDatabase& db, const Threshold& rho, GapConstraint gap,
                              const FrequentLevel& level, LevelStats* stats = nullptr);
MiningResult mine(const SequenceDatabase& db, const Threshold& rho, GapConstraint gap,
                  MiningOptions options = {});

}  // namespace negseq
