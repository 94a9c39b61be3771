#include "negseq/threshold.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

#include "negseq/error.hpp"

namespace negseq {

Threshold Threshold::parse(std::string_view text) {
  Threshold t;
  t.text_ = std::string(text);
  bool seen_point = false;
  bool seen_digit = false;
  std::string digits;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.') {
      if (seen_point) throw ParseError(i, "threshold has more than one decimal point");
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      seen_digit = true;
      digits += c;
      if (seen_point) ++t.decimals_;
    } else {
      throw ParseError(i, "threshold must be a plain decimal such as 0.13");
    }
  }
  if (!seen_digit) throw ParseError(0, "threshold must be a plain decimal such as 0.13");

  // A leading zero would make the string constructor read octal.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
  t.numerator_ = digits.empty() ? BigInt(0) : BigInt(digits);
  t.denominator_ = boost::multiprecision::pow(BigInt(10), t.decimals_);
  if (t.numerator_ == 0 || t.numerator_ > t.denominator_) {
    throw ConfigError("threshold " + t.text_ + " is outside (0, 1]");
  }
  return t;
}

Wide ofs_total(std::uint64_t total_length, std::uint64_t width, std::size_t length) {
  if (width == 0) throw std::invalid_argument("gap width must be at least 1");
  if (length == 0) throw std::invalid_argument("pattern length must be at least 1");
  Wide total = total_length;
  for (std::size_t i = 1; i < length; ++i) {
    if (__builtin_mul_overflow(total, Wide{width}, &total)) {
      throw OverflowError("offset total L*W^(m-1) exceeds 128 bits at length " +
                          std::to_string(length) + "; set a smaller max length");
    }
  }
  return total;
}

BigInt to_big(Wide value) {
  BigInt hi = static_cast<std::uint64_t>(value >> 64);
  return (hi << 64) | BigInt(static_cast<std::uint64_t>(value));
}

bool is_frequent(Count support, Wide ofs, const Threshold& rho) {
  if (ofs == 0) throw std::invalid_argument("offset total must be positive");
  // support * 10^d >= P * ofs
  const BigInt& num = rho.numerator();
  const BigInt& den = rho.denominator();
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (num <= kMax && den <= kMax) {
    const auto p = num.convert_to<std::uint64_t>();
    const auto d = den.convert_to<std::uint64_t>();
    Wide lhs = 0;
    Wide rhs = 0;
    const bool lhs_ok = !__builtin_mul_overflow(Wide{support}, Wide{d}, &lhs);
    const bool rhs_ok = !__builtin_mul_overflow(Wide{p}, ofs, &rhs);
    if (lhs_ok && rhs_ok) return lhs >= rhs;
  }
  return BigInt(support) * den >= num * to_big(ofs);
}

std::string to_string(Wide value) {
  if (value == 0) return "0";
  std::string out;
  while (value != 0) {
    out += static_cast<char>('0' + static_cast<int>(value % 10));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string format_rate(Count support, Wide ofs) {
  constexpr int kSignificant = 12;
  if (ofs == 0) throw std::invalid_argument("offset total must be positive");
  if (support == 0) return "0";

  const BigInt num = support;
  const BigInt den = to_big(ofs);

  // Scale so the quotient carries kSignificant digits: q = round(num * 10^k / den).
  // Find the decimal exponent of num/den first.
  int exponent = 0;  // num/den in [10^exponent, 10^(exponent+1))
  {
    BigInt n = num;
    BigInt d = den;
    while (n >= d * 10) {
      d *= 10;
      ++exponent;
    }
    while (n < d) {
      n *= 10;
      --exponent;
    }
  }
  const int shift = kSignificant - 1 - exponent;  // digits after the decimal point
  BigInt scaled_num = num;
  BigInt scaled_den = den;
  if (shift >= 0) {
    scaled_num *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift));
  } else {
    scaled_den *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-shift));
  }
  BigInt q = scaled_num / scaled_den;
  const BigInt r = scaled_num % scaled_den;
  if (r * 2 >= scaled_den) ++q;

  std::string digits = q.str();
  int point = static_cast<int>(digits.size()) - shift;  // digits left of the point
  std::string out;
  if (shift <= 0) {
    out = digits + std::string(static_cast<std::size_t>(-shift), '0');
    return out;
  }
  if (point <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-point), '0') + digits;
  } else {
    out = digits.substr(0, static_cast<std::size_t>(point)) + "." +
          digits.substr(static_cast<std::size_t>(point));
  }
  while (out.back() == '0') out.pop_back();
  if (out.back() == '.') out.pop_back();
  return out;
}

}  // namespace negseq
