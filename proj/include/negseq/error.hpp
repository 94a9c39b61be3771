#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace negseq {

/// Base class for every error the library reports to callers.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed pattern text, threshold, gap, or input record.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error("at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Raised when an exact count no longer fits the supported integer width.
class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace negseq
