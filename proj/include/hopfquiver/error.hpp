#pragma once

#include <stdexcept>
#include <string>

namespace hopfquiver {

// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

// Operands from two different scalar field models were combined.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

// Input data that fails a structural axiom (group table, module, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

// Raised when an internal consistency check fails; indicates a bug or a
// deliberately corrupted structure.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace hopfquiver
