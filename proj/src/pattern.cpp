#include "negseq/pattern.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "negseq/error.hpp"

namespace negseq {

GapConstraint::GapConstraint(std::uint32_t min_gap, std::uint32_t max_gap)
    : min_(min_gap), max_(max_gap) {
  if (min_gap > max_gap) {
    throw std::invalid_argument("gap [" + std::to_string(min_gap) + "," + std::to_string(max_gap) +
                                "] has min > max");
  }
}

bool Pattern::is_positive() const noexcept {
  return std::none_of(negatives.begin(), negatives.end(), [](const auto& e) { return e.has_value(); });
}

Pattern Pattern::positivized() const {
  return Pattern{positives, std::vector<std::optional<Item>>(negatives.size())};
}

namespace {

void require_joinable_length(const Pattern& p, const char* what) {
  if (p.length() < 2) throw std::invalid_argument(std::string(what) + " needs a pattern of length >= 2");
}

}  // namespace

Pattern prefix(const Pattern& p) {
  require_joinable_length(p, "prefix");
  return Pattern{{p.positives.begin(), p.positives.end() - 1},
                 {p.negatives.begin(), p.negatives.end() - 1}};
}

Pattern suffix(const Pattern& p) {
  require_joinable_length(p, "suffix");
  return Pattern{{p.positives.begin() + 1, p.positives.end()},
                 {p.negatives.begin() + 1, p.negatives.end()}};
}

bool joinable(const Pattern& p, const Pattern& q) {
  const std::size_t m = p.length();
  if (m != q.length() || m < 2) return false;
  return std::equal(p.positives.begin() + 1, p.positives.end(), q.positives.begin()) &&
         std::equal(p.negatives.begin() + 1, p.negatives.end(), q.negatives.begin());
}

std::optional<Pattern> join(const Pattern& p, const Pattern& q) {
  if (p.length() != q.length()) throw std::invalid_argument("join of patterns with different lengths");
  require_joinable_length(p, "join");
  if (!joinable(p, q)) return std::nullopt;
  Pattern t = p;
  t.positives.push_back(q.positives.back());
  t.negatives.push_back(q.negatives.back());
  return t;
}

namespace {

bool is_delimiter(char c) { return kPatternDelimiters.find(c) != std::string_view::npos; }

class PatternReader {
 public:
  PatternReader(std::string_view text, const Alphabet& alphabet, GapConstraint gap,
                Tokenizer tokenizer)
      : text_(text), alphabet_(alphabet), gap_(gap), tokenizer_(tokenizer) {}

  Pattern read() {
    Pattern p;
    p.positives.push_back(item());
    while (pos_ < text_.size()) {
      p.negatives.push_back(gap());
      p.positives.push_back(item());
    }
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Item item() {
    const std::size_t start = pos_;
    if (tokenizer_ == Tokenizer::Char) {
      if (pos_ < text_.size() && !is_delimiter(text_[pos_])) ++pos_;
    } else {
      while (pos_ < text_.size() && !is_delimiter(text_[pos_])) ++pos_;
    }
    if (pos_ == start) fail("expected an item");
    const auto token = text_.substr(start, pos_ - start);
    auto found = alphabet_.find(token);
    if (!found) throw ParseError(start, "unknown item '" + std::string(token) + "'");
    return *found;
  }

  std::uint32_t number() {
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first) fail("expected an unsigned integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  std::optional<Item> gap() {
    const std::size_t start = pos_;
    expect('[');
    const std::uint32_t lo = number();
    expect(',');
    const std::uint32_t hi = number();
    std::optional<Item> negative;
    if (pos_ < text_.size() && text_[pos_] == ',') {
      ++pos_;
      expect('!');
      negative = item();
    }
    expect(']');
    if (lo != gap_.min_gap() || hi != gap_.max_gap()) {
      throw ParseError(start, "gap [" + std::to_string(lo) + "," + std::to_string(hi) +
                                  "] does not match the run gap [" + std::to_string(gap_.min_gap()) +
                                  "," + std::to_string(gap_.max_gap()) + "]");
    }
    return negative;
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  GapConstraint gap_;
  Tokenizer tokenizer_;
  std::size_t pos_ = 0;
};

}  // namespace

Pattern parse_pattern(std::string_view text, const Alphabet& alphabet, GapConstraint gap,
                      Tokenizer tokenizer) {
  return PatternReader(text, alphabet, gap, tokenizer).read();
}

std::string format_pattern(const Pattern& p, const Alphabet& alphabet, GapConstraint gap) {
  const std::string bounds =
      std::to_string(gap.min_gap()) + "," + std::to_string(gap.max_gap());
  std::string out = alphabet.token(p.positives.front());
  for (std::size_t j = 1; j < p.positives.size(); ++j) {
    out += '[';
    out += bounds;
    if (const auto& e = p.negatives[j - 1]) {
      out += ",!";
      out += alphabet.token(*e);
    }
    out += ']';
    out += alphabet.token(p.positives[j]);
  }
  return out;
}

}  // namespace negseq
