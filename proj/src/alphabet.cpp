#include "negseq/alphabet.hpp"

#include <stdexcept>

namespace negseq {

Alphabet::Alphabet(std::span<const std::string> tokens) {
  for (const auto& t : tokens) {
    if (find(t)) throw std::invalid_argument("duplicate alphabet token '" + t + "'");
    intern(t);
  }
}

Item Alphabet::intern(std::string_view token) {
  if (auto it = ids_.find(token); it != ids_.end()) return Item{it->second};
  const auto id = static_cast<std::uint32_t>(tokens_.size());
  tokens_.emplace_back(token);
  ids_.emplace(tokens_.back(), id);
  return Item{id};
}

std::optional<Item> Alphabet::find(std::string_view token) const {
  if (auto it = ids_.find(token); it != ids_.end()) return Item{it->second};
  return std::nullopt;
}

const std::string& Alphabet::token(Item item) const {
  if (!contains(item)) throw std::out_of_range("item id " + std::to_string(item.id) + " not in alphabet");
  return tokens_[item.id];
}

}  // namespace negseq
