#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "negseq/alphabet.hpp"

namespace negseq {

/// Inclusive bounds on the number of positions strictly between two matched items.
class GapConstraint {
 public:
  /// Throws std::invalid_argument unless min_gap <= max_gap.
  GapConstraint(std::uint32_t min_gap, std::uint32_t max_gap);

  std::uint32_t min_gap() const noexcept { return min_; }
  std::uint32_t max_gap() const noexcept { return max_; }
  /// Number of admissible distances, max_gap - min_gap + 1.
  std::uint64_t width() const noexcept { return std::uint64_t{max_} - min_ + 1; }

  /// True when `distance` (positions strictly between) lies in [min_gap, max_gap].
  bool admits(std::uint64_t distance) const noexcept { return distance >= min_ && distance <= max_; }

  friend bool operator==(const GapConstraint&, const GapConstraint&) = default;

 private:
  std::uint32_t min_;
  std::uint32_t max_;
};

/// A sequential pattern: positive items separated by gaps, each gap optionally
/// forbidding one item strictly between its flanking matches.
///
/// The defaulted ordering is the canonical output order: positives
/// lexicographically, then gap annotations gap by gap with "no negative"
/// sorting before any negative item.
struct Pattern {
  std::vector<Item> positives;
  std::vector<std::optional<Item>> negatives;  // size() == positives.size() - 1

  static Pattern single(Item item) { return Pattern{{item}, {}}; }

  std::size_t length() const noexcept { return positives.size(); }
  bool is_positive() const noexcept;
  /// Same positives with every negative annotation removed.
  Pattern positivized() const;
  /// Negative annotation of the final gap, if any. Requires length() >= 2.
  std::optional<Item> last_negative() const { return negatives.back(); }

  friend auto operator<=>(const Pattern&, const Pattern&) = default;
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Drops the last positive item and the last gap's annotation. Throws
/// std::invalid_argument for patterns shorter than 2.
Pattern prefix(const Pattern& p);

/// Drops the first positive item and the first gap's annotation. Throws
/// std::invalid_argument for patterns shorter than 2.
Pattern suffix(const Pattern& p);

/// suffix(p) == prefix(q), compared in place.
bool joinable(const Pattern& p, const Pattern& q);

/// p extended by q's last gap and item, when suffix(p) == prefix(q).
/// Throws std::invalid_argument on length mismatch or length < 2.
std::optional<Pattern> join(const Pattern& p, const Pattern& q);

/// Reads `a[0,1]a[0,1,!b]c`. Every gap must equal `gap`. Throws ParseError.
Pattern parse_pattern(std::string_view text, const Alphabet& alphabet, GapConstraint gap,
                      Tokenizer tokenizer = Tokenizer::Char);

std::string format_pattern(const Pattern& p, const Alphabet& alphabet, GapConstraint gap);

}  // namespace negseq
