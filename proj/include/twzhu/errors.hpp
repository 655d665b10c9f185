#pragma once

#include <stdexcept>
#include <string>

namespace twzhu {

/// Base of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class ModulusMismatch : public Error {
 public:
  using Error::Error;
};

/// Two fractional exponents with different denominators were combined.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class WindowUnderflow : public Error {
 public:
  using Error::Error;
};

/// A mode or basis element beyond the tabulated window was required.
class InsufficientTable : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class AxiomViolation : public Error {
 public:
  using Error::Error;
};

class InvalidBox : public Error {
 public:
  using Error::Error;
};

class NotAModule : public Error {
 public:
  using Error::Error;
};

class NonDiagonalizable : public Error {
 public:
  using Error::Error;
};

class NonhomogeneousWeight : public Error {
 public:
  using Error::Error;
};

}  // namespace twzhu
