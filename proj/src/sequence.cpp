#include "negseq/sequence.hpp"

#include <stdexcept>
#include <string>

namespace negseq {

SequenceDatabase SequenceDatabase::from_strings(std::span<const std::string> lines) {
  SequenceDatabase db;
  for (const auto& line : lines) {
    std::vector<Item> items;
    items.reserve(line.size());
    for (char c : line) items.push_back(db.alphabet_.intern(std::string_view(&c, 1)));
    db.add(std::move(items));
  }
  return db;
}

void SequenceDatabase::add(std::vector<Item> items) {
  for (Item it : items) {
    if (!alphabet_.contains(it)) throw std::invalid_argument("sequence item outside the alphabet");
  }
  total_length_ += items.size();
  sequences_.push_back(Sequence{sequences_.size(), std::move(items)});
}

}  // namespace negseq
