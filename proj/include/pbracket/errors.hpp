#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pbracket {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SignatureMismatch : public Error {
 public:
  SignatureMismatch() : Error("operands are defined over different group signatures") {}
};

class InvalidSignature : public Error {
 public:
  using Error::Error;
};

class NoConsistentConvention : public Error {
 public:
  NoConsistentConvention() : Error("no convention tuple satisfies the calibration identities") {}
};

class NonlinearAntiderivative : public Error {
 public:
  NonlinearAntiderivative()
      : Error("product would contain a quadratic antiderivative factor; nested brackets are not supported") {}
};

class UnknownRule : public Error {
 public:
  explicit UnknownRule(const std::string& name) : Error("unknown mechanisation rule '" + name + "'") {}
};

class ZeroPlanck : public Error {
 public:
  ZeroPlanck() : Error("Planck parameter must be nonzero") {}
};

class NotLocalized : public Error {
 public:
  NotLocalized() : Error("observable uses sector-2 generators") {}
};

class SingularTransformation : public Error {
 public:
  SingularTransformation() : Error("h_eff is singular when h1*h2 = 0") {}
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
  DivisionByZero() : Error("division by zero") {}
};

class DimensionTooSmall : public Error {
 public:
  DimensionTooSmall(std::size_t have, std::size_t need)
      : Error("truncation dimension " + std::to_string(have) + " is too small, need at least " +
              std::to_string(need)) {}
};

/// Base for DSL errors; carries the 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnknownSymbol : public ParseError {
 public:
  using ParseError::ParseError;
};

class IndexOutOfRange : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace pbracket
