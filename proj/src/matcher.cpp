#include "negseq/matcher.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "negseq/error.hpp"

namespace negseq {

ItemIndex::ItemIndex(const Sequence& sequence, std::size_t alphabet_size)
    : positions_(alphabet_size), length_(sequence.length()) {
  if (sequence.length() >= std::numeric_limits<Position>::max()) {
    throw std::length_error("sequence longer than the supported position range");
  }
  for (std::size_t j = 0; j < sequence.items.size(); ++j) {
    const Item item = sequence.items[j];
    if (item.id >= alphabet_size) throw std::invalid_argument("sequence item outside the alphabet");
    positions_[item.id].push_back(static_cast<Position>(j + 1));
  }
}

std::span<const Position> ItemIndex::positions(Item item) const {
  if (item.id >= positions_.size()) return {};
  return positions_[item.id];
}

KeyValueArray ItemIndex::unit_array(Item item) const {
  KeyValueArray out;
  const auto pos = positions(item);
  out.reserve(pos.size());
  for (Position p : pos) out.push_back(KeyValue{p, 1});
  return out;
}

bool negative_absent(const ItemIndex& index, Item item, Position from, Position to) {
  const auto pos = index.positions(item);
  auto it = std::upper_bound(pos.begin(), pos.end(), from);
  return it == pos.end() || *it >= to;
}

KeyValueArray extend_array(std::span<const KeyValue> prefix_array,
                           std::span<const KeyValue> ending_keys,
                           std::optional<Item> last_negative, const ItemIndex& index,
                           GapConstraint gap) {
  KeyValueArray out;
  if (prefix_array.empty() || ending_keys.empty()) return out;

  // A prefix entry at x reaches end c when min_gap <= c - x - 1 <= max_gap,
  // i.e. x in [c - max_gap - 1, c - min_gap - 1].
  const std::uint64_t reach_far = std::uint64_t{gap.max_gap()} + 1;
  const std::uint64_t reach_near = std::uint64_t{gap.min_gap()} + 1;

  std::size_t window = 0;  // first prefix entry not yet too far left of the current end
  for (const KeyValue& end : ending_keys) {
    const std::uint64_t c = end.key;
    if (c < reach_near) continue;
    const std::uint64_t hi = c - reach_near;
    const std::uint64_t lo = c > reach_far ? c - reach_far : 0;

    while (window < prefix_array.size() && prefix_array[window].key < lo) ++window;

    Count total = 0;
    for (std::size_t j = window; j < prefix_array.size() && prefix_array[j].key <= hi; ++j) {
      const KeyValue& start = prefix_array[j];
      if (last_negative && !negative_absent(index, *last_negative, start.key, end.key)) continue;
      if (__builtin_add_overflow(total, start.value, &total)) {
        throw OverflowError("occurrence count at position " + std::to_string(c) +
                            " exceeds 64 bits");
      }
    }
    if (total > 0) out.push_back(KeyValue{end.key, total});
  }
  return out;
}

JoinedArray negpair(const Pattern& p, const Pattern& q, std::span<const KeyValue> p_array,
                    std::span<const KeyValue> q_array, const ItemIndex& index,
                    GapConstraint gap) {
  auto joined = join(p, q);
  if (!joined) throw std::invalid_argument("negpair: suffix(p) differs from prefix(q)");
  auto array = extend_array(p_array, q_array, joined->last_negative(), index, gap);
  return JoinedArray{std::move(*joined), std::move(array)};
}

Count support_of(std::span<const KeyValue> array) {
  Count total = 0;
  for (const KeyValue& kv : array) {
    if (__builtin_add_overflow(total, kv.value, &total)) {
      throw OverflowError("support exceeds 64 bits");
    }
  }
  return total;
}

KeyValueArray array_of(const Pattern& p, const ItemIndex& index, GapConstraint gap) {
  if (p.length() == 0) throw std::invalid_argument("empty pattern");
  if (p.length() == 1) return index.unit_array(p.positives.front());
  if (p.length() == 2) {
    return extend_array(index.unit_array(p.positives[0]), index.unit_array(p.positives[1]),
                        p.negatives[0], index, gap);
  }
  const Pattern head = prefix(p);
  const Pattern tail = suffix(p);
  return negpair(head, tail, array_of(head, index, gap), array_of(tail, index, gap), index, gap)
      .array;
}

namespace {

struct Enumerator {
  const Pattern& pattern;
  const std::vector<Item>& items;
  GapConstraint gap;
  bool collect;
  OccurrenceCount result;
  std::vector<std::size_t> chosen;  // 0-based

  bool gap_clear(std::size_t from, std::size_t to, std::optional<Item> forbidden) const {
    if (!forbidden) return true;
    for (std::size_t k = from + 1; k < to; ++k) {
      if (items[k] == *forbidden) return false;
    }
    return true;
  }

  void descend(std::size_t depth) {
    if (depth == pattern.length()) {
      ++result.support;
      if (collect) {
        Occurrence occ;
        for (std::size_t i : chosen) occ.positions.push_back(static_cast<Position>(i + 1));
        result.occurrences.push_back(std::move(occ));
      }
      return;
    }
    const std::size_t prev = chosen.back();
    const std::size_t first = prev + gap.min_gap() + 1;
    const std::size_t last = std::min(items.size() - 1, prev + std::size_t{gap.max_gap()} + 1);
    for (std::size_t k = first; k <= last && k < items.size(); ++k) {
      if (items[k] != pattern.positives[depth]) continue;
      if (!gap_clear(prev, k, pattern.negatives[depth - 1])) continue;
      chosen.push_back(k);
      descend(depth + 1);
      chosen.pop_back();
    }
  }
};

}  // namespace

OccurrenceCount brute_force_support(const Pattern& p, const Sequence& sequence, GapConstraint gap,
                                    bool collect_occurrences) {
  if (p.length() == 0) throw std::invalid_argument("empty pattern");
  Enumerator e{p, sequence.items, gap, collect_occurrences, {}, {}};
  for (std::size_t start = 0; start < sequence.items.size(); ++start) {
    if (sequence.items[start] != p.positives.front()) continue;
    e.chosen.assign(1, start);
    e.descend(1);
  }
  return std::move(e.result);
}

}  // namespace negseq
