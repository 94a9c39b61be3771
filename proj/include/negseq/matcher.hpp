#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "negseq/pattern.hpp"
#include "negseq/sequence.hpp"
#include "negseq/threshold.hpp"

namespace negseq {

/// 1-based position within one sequence.
using Position = std::uint32_t;

/// Occurrences of one pattern ending at `key`.
struct KeyValue {
  Position key = 0;
  Count value = 0;

  friend bool operator==(const KeyValue&, const KeyValue&) = default;
};

/// Ending position -> occurrence count for one pattern in one sequence.
/// Keys strictly increase and every value is at least 1.
using KeyValueArray = std::vector<KeyValue>;

/// Sorted positions of every item in one sequence.
class ItemIndex {
 public:
  ItemIndex(const Sequence& sequence, std::size_t alphabet_size);

  std::span<const Position> positions(Item item) const;
  /// Key-value array of the single-item pattern: each position with value 1.
  KeyValueArray unit_array(Item item) const;
  std::size_t length() const noexcept { return length_; }

 private:
  std::vector<std::vector<Position>> positions_;
  std::size_t length_ = 0;
};

/// True iff `item` occurs at no position strictly between `from` and `to`.
bool negative_absent(const ItemIndex& index, Item item, Position from, Position to);

/// Key-value array of the pattern obtained by appending one gap and item to a
/// pattern whose array is `prefix_array`. `ending_keys` supplies the admissible
/// end positions (only the keys are read). A gap annotated with
/// `last_negative` additionally requires that item to be absent in between.
///
/// Runs as a two-pointer sweep: the window start only moves forward and each
/// ending key rescans at most the gap width of prefix entries.
KeyValueArray extend_array(std::span<const KeyValue> prefix_array,
                           std::span<const KeyValue> ending_keys,
                           std::optional<Item> last_negative, const ItemIndex& index,
                           GapConstraint gap);

struct JoinedArray {
  Pattern pattern;
  KeyValueArray array;
};

/// Joins `p` and `q` and derives the joined pattern's array in the sequence
/// behind `index` from p's array and q's ending keys. Throws
/// std::invalid_argument when suffix(p) != prefix(q).
JoinedArray negpair(const Pattern& p, const Pattern& q, std::span<const KeyValue> p_array,
                    std::span<const KeyValue> q_array, const ItemIndex& index,
                    GapConstraint gap);

Count support_of(std::span<const KeyValue> array);

/// Array of an arbitrary pattern, built bottom-up from item arrays by
/// repeated negpair calls.
KeyValueArray array_of(const Pattern& p, const ItemIndex& index, GapConstraint gap);

/// Matched positions of one occurrence, 1-based.
struct Occurrence {
  std::vector<Position> positions;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

struct OccurrenceCount {
  Count support = 0;
  std::vector<Occurrence> occurrences;  // empty unless collected
};

/// Reference count by explicit enumeration of every offset sequence against
/// the raw items. Independent of the key-value machinery.
OccurrenceCount brute_force_support(const Pattern& p, const Sequence& sequence,
                                    GapConstraint gap, bool collect_occurrences = true);

}  // namespace negseq
