#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "negseq/alphabet.hpp"

namespace negseq {

struct Sequence {
  std::size_t seq_id = 0;
  std::vector<Item> items;

  std::size_t length() const noexcept { return items.size(); }
};

/// The mined corpus. Keeps the total length in step with the sequences.
class SequenceDatabase {
 public:
  SequenceDatabase() = default;
  explicit SequenceDatabase(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  /// Builds a database from char-tokenized strings, one item per byte.
  static SequenceDatabase from_strings(std::span<const std::string> lines);

  /// Appends a sequence; ids are assigned in insertion order. Throws
  /// std::invalid_argument if an item is outside the alphabet.
  void add(std::vector<Item> items);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  Alphabet& alphabet() noexcept { return alphabet_; }
  std::span<const Sequence> sequences() const noexcept { return sequences_; }
  std::size_t size() const noexcept { return sequences_.size(); }
  bool empty() const noexcept { return sequences_.empty(); }
  std::uint64_t total_length() const noexcept { return total_length_; }

 private:
  Alphabet alphabet_;
  std::vector<Sequence> sequences_;
  std::uint64_t total_length_ = 0;
};

}  // namespace negseq
