#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rlelcs {

/// Index outside the valid domain of a string, prefix table or array.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Bad caller-supplied parameter (d below d_min, r > m, bad separator, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Lookup of a key or point that is not stored.
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Brute-force oracle asked to work above its configured size bound.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A produced answer failed verification. Always a bug in anchors or check.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A reduction received inconsistent answers from its solver.
class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::int64_t line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::int64_t line() const noexcept { return line_; }

 private:
  std::int64_t line_;
};

}  // namespace rlelcs
