#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace negseq {

using Count = std::uint64_t;
/// Width used for offset-sequence totals.
__extension__ typedef unsigned __int128 Wide;
using BigInt = boost::multiprecision::cpp_int;

/// A support-rate threshold held as the exact decimal numerator / 10^decimals.
class Threshold {
 public:
  /// Accepts plain decimals such as "0.13", "1", "0.0100". No sign, no exponent.
  /// Throws ParseError on malformed text and ConfigError outside (0, 1].
  static Threshold parse(std::string_view text);

  const BigInt& numerator() const noexcept { return numerator_; }
  unsigned decimals() const noexcept { return decimals_; }
  const BigInt& denominator() const noexcept { return denominator_; }
  /// The text the threshold was parsed from.
  const std::string& text() const noexcept { return text_; }

 private:
  Threshold() = default;

  BigInt numerator_;
  BigInt denominator_;
  unsigned decimals_ = 0;
  std::string text_;
};

/// L * W^(m-1), checked. Throws OverflowError past 128 bits and
/// std::invalid_argument when width or length is zero.
Wide ofs_total(std::uint64_t total_length, std::uint64_t width, std::size_t length);

/// sup / ofs >= rho in exact arithmetic. Requires ofs >= 1.
bool is_frequent(Count support, Wide ofs, const Threshold& rho);

/// Decimal rendering of support / ofs with up to 12 significant digits,
/// rounded half-up from the exact quotient; trailing zeros trimmed.
std::string format_rate(Count support, Wide ofs);

std::string to_string(Wide value);
BigInt to_big(Wide value);

}  // namespace negseq
