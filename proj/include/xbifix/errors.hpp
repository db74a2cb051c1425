#ifndef XBIFIX_ERRORS_HPP_
#define XBIFIX_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xbifix {

// Precondition violated (out-of-range length, mismatched alphabet, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Instance too large for an exhaustive enumeration; never truncated silently.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Working precision could not certify a result; retry with more bits.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(std::string const& what, long bits_used)
      : std::runtime_error(what), bits_used_(bits_used) {}

  long bits_used() const noexcept { return bits_used_; }

 private:
  long bits_used_;
};

// A numeric routine failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string const& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace xbifix

#endif  // XBIFIX_ERRORS_HPP_
