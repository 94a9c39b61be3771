#include "negseq/miner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "negseq/error.hpp"

namespace negseq {

const FrequentEntry* FrequentLevel::find(const Pattern& p) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), p,
                             [](const FrequentEntry& e, const Pattern& key) { return e.pattern() < key; });
  if (it == entries.end() || it->pattern() != p) return nullptr;
  return &*it;
}

BaselineCounts baseline_candidate_counts(std::uint64_t join_observed,
                                         std::uint64_t previous_level_size, std::uint64_t sigma,
                                         std::uint64_t positive_candidates) {
  const std::uint64_t sigma_sq = sigma * sigma;
  return BaselineCounts{join_observed, previous_level_size * (sigma + sigma_sq),
                        positive_candidates * (1 + sigma_sq)};
}

std::uint64_t MiningStats::total_candidates() const {
  std::uint64_t total = 0;
  for (const auto& level : levels) total += level.candidates;
  return total;
}

std::size_t MiningResult::pattern_count() const {
  std::size_t n = 0;
  for (const auto& level : levels) n += level.size();
  return n;
}

/// A pattern to evaluate: the extension of `left` (a pattern of length m with
/// per-sequence arrays) ending at the keys of `right`.
struct Miner::Candidate {
  Pattern pattern;
  const std::vector<KeyValueArray>* left;
  const std::vector<KeyValueArray>* right;
};

struct Miner::Evaluated {
  std::vector<Count> per_sequence;
  Count total = 0;
  bool frequent = false;
  std::vector<KeyValueArray> arrays;  // kept only when frequent
};

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t kv_bytes(const FrequentLevel& level) {
  std::uint64_t bytes = 0;
  for (const auto& e : level.entries) {
    for (const auto& a : e.arrays) bytes += a.size() * sizeof(KeyValue);
  }
  return bytes;
}

/// Runs fn(i) for i in [0, n) on up to `workers` threads. The first exception
/// thrown is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    try {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = n;
    }
  };
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  {
    std::vector<std::jthread> threads;
    threads.reserve(count);
    for (unsigned t = 0; t < count; ++t) threads.emplace_back(body);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

Miner::Miner(const SequenceDatabase& db, Threshold rho, GapConstraint gap, MiningOptions options)
    : db_(db), rho_(std::move(rho)), gap_(gap), options_(std::move(options)) {
  if (options_.max_length == 0) throw ConfigError("max length must be at least 1");
  indexes_.reserve(db.size());
  for (const auto& s : db.sequences()) indexes_.emplace_back(s, db.alphabet().size());
}

std::vector<Miner::Evaluated> Miner::evaluate(std::span<const Candidate> candidates,
                                              Wide ofs) const {
  std::vector<Evaluated> out(candidates.size());
  parallel_for(candidates.size(), options_.workers, [&](std::size_t i) {
    const Candidate& c = candidates[i];
    Evaluated& ev = out[i];
    const auto last_negative = c.pattern.last_negative();
    std::vector<KeyValueArray> arrays(indexes_.size());
    ev.per_sequence.resize(indexes_.size());
    for (std::size_t s = 0; s < indexes_.size(); ++s) {
      arrays[s] = extend_array((*c.left)[s], (*c.right)[s], last_negative, indexes_[s], gap_);
      ev.per_sequence[s] = support_of(arrays[s]);
      if (__builtin_add_overflow(ev.total, ev.per_sequence[s], &ev.total)) {
        throw OverflowError("total support exceeds 64 bits");
      }
    }
    ev.frequent = ev.total > 0 && is_frequent(ev.total, ofs, rho_);
    if (ev.frequent) ev.arrays = std::move(arrays);
  });
  return out;
}

FrequentLevel Miner::assemble(std::size_t length, std::span<const Candidate> candidates,
                              std::vector<Evaluated> evaluated, LevelStats* stats) const {
  const Wide ofs = ofs_total(db_.total_length(), gap_.width(), length);
  FrequentLevel level{length, {}};
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    Evaluated& ev = evaluated[i];
    if (options_.observer) options_.observer(candidates[i].pattern, ev.per_sequence);
    if (!ev.frequent) continue;
    level.entries.push_back(FrequentEntry{
        SupportRecord{candidates[i].pattern, std::move(ev.per_sequence), ev.total, ofs},
        std::move(ev.arrays)});
  }
  std::sort(level.entries.begin(), level.entries.end(),
            [](const FrequentEntry& a, const FrequentEntry& b) { return a.pattern() < b.pattern(); });
  if (stats) {
    stats->length = length;
    stats->candidates += candidates.size();
    stats->frequent = level.size();
    stats->kv_bytes = kv_bytes(level);
  }
  return level;
}

FrequentLevel Miner::frequent_items(LevelStats* stats) const {
  const auto start = Clock::now();
  FrequentLevel level{1, {}};
  const std::uint64_t total_length = db_.total_length();
  const std::size_t sigma = db_.alphabet().size();
  if (total_length > 0) {
    const Wide ofs = ofs_total(total_length, gap_.width(), 1);
    for (std::uint32_t id = 0; id < sigma; ++id) {
      const Item item{id};
      SupportRecord record{Pattern::single(item), {}, 0, ofs};
      std::vector<KeyValueArray> arrays;
      for (const auto& index : indexes_) {
        arrays.push_back(index.unit_array(item));
        record.per_sequence.push_back(arrays.back().size());
        record.total += arrays.back().size();
      }
      if (options_.observer) options_.observer(record.pattern, record.per_sequence);
      if (record.total > 0 && is_frequent(record.total, ofs, rho_)) {
        level.entries.push_back(FrequentEntry{std::move(record), std::move(arrays)});
      }
    }
  }
  if (stats) {
    stats->length = 1;
    stats->candidates = total_length > 0 ? sigma : 0;
    stats->frequent = level.size();
    stats->kv_bytes = kv_bytes(level);
    stats->seconds = seconds_since(start);
  }
  return level;
}

FrequentLevel Miner::length_two(const FrequentLevel& items, LevelStats* stats) const {
  const auto start = Clock::now();
  LevelStats local;
  LevelStats& st = stats ? *stats : local;
  st = LevelStats{};
  if (items.empty()) {
    st.length = 2;
    return FrequentLevel{2, {}};
  }
  const Wide ofs = ofs_total(db_.total_length(), gap_.width(), 2);

  std::vector<Candidate> positives;
  for (const auto& p : items.entries) {
    for (const auto& q : items.entries) {
      Pattern t{{p.pattern().positives[0], q.pattern().positives[0]}, {std::nullopt}};
      positives.push_back(Candidate{std::move(t), &p.arrays, &q.arrays});
    }
  }
  auto evaluated = evaluate(positives, ofs);

  std::vector<Candidate> negatives;
  if (!options_.positives_only) {
    const auto sigma = static_cast<std::uint32_t>(db_.alphabet().size());
    for (std::size_t i = 0; i < positives.size(); ++i) {
      if (!evaluated[i].frequent) continue;
      for (std::uint32_t e = 0; e < sigma; ++e) {
        Pattern t = positives[i].pattern;
        t.negatives[0] = Item{e};
        negatives.push_back(Candidate{std::move(t), positives[i].left, positives[i].right});
      }
    }
  }
  auto evaluated_negatives = evaluate(negatives, ofs);

  std::vector<Candidate> all = std::move(positives);
  all.insert(all.end(), std::make_move_iterator(negatives.begin()),
             std::make_move_iterator(negatives.end()));
  evaluated.insert(evaluated.end(), std::make_move_iterator(evaluated_negatives.begin()),
                   std::make_move_iterator(evaluated_negatives.end()));
  auto level = assemble(2, all, std::move(evaluated), &st);
  st.seconds = seconds_since(start);
  return level;
}

FrequentLevel Miner::extend(const FrequentLevel& level, LevelStats* stats) const {
  const auto start = Clock::now();
  const std::size_t next_length = level.length + 1;
  LevelStats local;
  LevelStats& st = stats ? *stats : local;
  st = LevelStats{};
  st.length = next_length;
  if (level.empty()) return FrequentLevel{next_length, {}};
  if (level.length < 2) throw std::invalid_argument("extend needs a level of length >= 2");
  const Wide ofs = ofs_total(db_.total_length(), gap_.width(), next_length);

  // Group q by prefix(q) so each p meets only the q it can join with.
  std::map<Pattern, std::vector<const FrequentEntry*>> by_prefix;
  for (const auto& q : level.entries) by_prefix[prefix(q.pattern())].push_back(&q);

  std::vector<Candidate> candidates;
  std::uint64_t positive_candidates = 0;
  for (const auto& p : level.entries) {
    auto it = by_prefix.find(suffix(p.pattern()));
    if (it == by_prefix.end()) continue;
    for (const FrequentEntry* q : it->second) {
      auto t = join(p.pattern(), q->pattern());
      if (p.pattern().is_positive() && q->pattern().is_positive()) ++positive_candidates;
      candidates.push_back(Candidate{std::move(*t), &p.arrays, &q->arrays});
    }
  }

  auto evaluated = evaluate(candidates, ofs);
  auto next = assemble(next_length, candidates, std::move(evaluated), &st);
  st.baseline = baseline_candidate_counts(candidates.size(), level.size(), db_.alphabet().size(),
                                          positive_candidates);
  st.seconds = seconds_since(start);
  return next;
}

MiningResult Miner::run() const {
  MiningResult result{MiningConfig{rho_, gap_, options_}, {}, {}};
  result.config.options.observer = nullptr;

  std::uint64_t retained = 0;
  auto record = [&](FrequentLevel level, LevelStats stats) {
    retained += stats.kv_bytes;
    result.stats.peak_kv_bytes = std::max(result.stats.peak_kv_bytes, retained);
    result.stats.levels.push_back(stats);
    if (!level.empty()) result.levels.push_back(std::move(level));
  };

  LevelStats stats;
  record(frequent_items(&stats), stats);
  if (result.levels.empty() || options_.max_length < 2) return result;

  record(length_two(result.levels.back(), &stats), stats);
  while (result.levels.back().length == result.stats.levels.back().length &&
         result.levels.back().length < options_.max_length) {
    record(extend(result.levels.back(), &stats), stats);
  }
  return result;
}

FrequentLevel mine_frequent_items(const SequenceDatabase& db, const Threshold& rho) {
  return Miner(db, rho, GapConstraint(0, 0)).frequent_items();
}

FrequentLevel mine_length_two(const SequenceDatabase& db, const Threshold& rho, GapConstraint gap,
                              const FrequentLevel& items, bool positives_only) {
  MiningOptions options;
  options.positives_only = positives_only;
  return Miner(db, rho, gap, std::move(options)).length_two(items);
}

FrequentLevel mine_next_level(const SequenceDatabase& db, const Threshold& rho, GapConstraint gap,
                              const FrequentLevel& level, LevelStats* stats) {
  return Miner(db, rho, gap).extend(level, stats);
}

MiningResult mine(const SequenceDatabase& db, const Threshold& rho, GapConstraint gap,
                  MiningOptions options) {
  return Miner(db, rho, gap, std::move(options)).run();
}

}  // namespace negseq
