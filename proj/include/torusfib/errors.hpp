#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace torusfib {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input. position() is a 0-based byte offset into the text.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

// A documented precondition of an operation does not hold for the given input.
class DomainError : public Error {
public:
  using Error::Error;
};

// Two independent computations of the same quantity disagree. Always a bug or a
// corrupted input; never silently reconciled.
class ConsistencyError : public Error {
public:
  using Error::Error;
};

}  // namespace torusfib
