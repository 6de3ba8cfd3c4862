#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace haarconv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different groups or carriers.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input outside the sizes/parameter ranges this library handles.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A family or measure lacks the algebraic structure an operation relies on
/// (e.g. an initial measure that is not the Haar measure of a subgroup).
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A checked precondition failed; carries the measured deviation.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, double deviation)
      : Error(format(what, deviation)), deviation_(deviation) {}

  double deviation() const noexcept { return deviation_; }

 private:
  static std::string format(const std::string& what, double deviation) {
    std::ostringstream os;
    os << what << " (deviation " << deviation << ")";
    return os.str();
  }

  double deviation_;
};

/// An invariance precondition failed.
class InvarianceError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace haarconv
