#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nakai {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RingMismatch : public Error {
 public:
  using Error::Error;
};

class MissingBinding : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Raised when I + m^D never stabilizes below the cap.
class NotFiniteColength : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotInJacobianIdeal : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotLiftable : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotADerivation : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class SpecializationError : public Error {
 public:
  using Error::Error;
};

class CatalogError : public Error {
 public:
  using Error::Error;
};

}  // namespace nakai
