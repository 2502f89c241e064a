#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spevo {

// Base of every error raised by the library. The CLI maps the concrete type
// to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument or violated precondition (t > |E|, fraction out of range,
// Neumann alpha outside its domain, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Eigensolver failure, non-finite input, overflow.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public IoError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : IoError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace spevo
