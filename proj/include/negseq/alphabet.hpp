#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace negseq {

/// An element of the alphabet, identified by its index.
struct Item {
  std::uint32_t id = 0;

  friend auto operator<=>(const Item&, const Item&) = default;
};

/// How raw text is cut into items.
enum class Tokenizer {
  Char,   ///< every byte is one item
  Token,  ///< whitespace-separated runs are items
};

/// Characters that delimit the pattern grammar and therefore cannot appear in item tokens.
inline constexpr std::string_view kPatternDelimiters = "[],!";

/// Bijection between surface tokens and item ids, in first-appearance order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::span<const std::string> tokens);

  /// Returns the item for `token`, adding it if unseen.
  Item intern(std::string_view token);

  std::optional<Item> find(std::string_view token) const;
  const std::string& token(Item item) const;

  std::size_t size() const noexcept { return tokens_.size(); }
  bool contains(Item item) const noexcept { return item.id < tokens_.size(); }
  std::span<const std::string> tokens() const noexcept { return tokens_; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.tokens_ == b.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, std::uint32_t, std::less<>> ids_;
};

}  // namespace negseq
