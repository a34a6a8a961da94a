#pragma once

#include <stdexcept>
#include <string>

namespace omegared {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two operands were expected to share an alphabet and do not.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

// A machine description violates one of its structural invariants.
class MachineError : public Error {
 public:
  using Error::Error;
};

// Malformed machine text. Carries the 1-based line number of the offending line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A prefix request exceeded the configured ceiling.
class PrefixLimitExceeded : public Error {
 public:
  using Error::Error;
};

// An operation was applied to a machine kind it does not support.
class UnsupportedMachine : public Error {
 public:
  using Error::Error;
};

}  // namespace omegared
