#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace secform {

/// Base of every domain failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InvalidInput(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An exhaustive computation would exceed the configured size cap.
class SizeLimitError : public Error {
 public:
  SizeLimitError(const std::string& what, std::uint64_t required)
      : Error(what + " (requires a cap of at least " + std::to_string(required) + ")"),
        required_(required) {}

  std::uint64_t required() const noexcept { return required_; }

 private:
  std::uint64_t required_;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// No relation family is defined for the requested residue class.
class NoRelation : public Error {
 public:
  using Error::Error;
};

/// An internal guard fired; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace secform
