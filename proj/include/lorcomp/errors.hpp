#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lorcomp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown atom ids, mismatched spaces, malformed input documents.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// An argument outside the domain of an operation (empty set, exponent range).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The operation exists but the exponent regime does not admit it.
class RegimeError : public Error {
 public:
  using Error::Error;
};

// Asked a finite-q evaluator for q = inf, or the other way around.
class WrongOperationError : public Error {
 public:
  using Error::Error;
};

// Two routes that must agree did not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Exhaustive search refused because the space is larger than the cap.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// The pullback measure is not absolutely continuous; carries the null
// codomain atoms whose fibers have positive mass.
class NoDensityError : public Error {
 public:
  NoDensityError(const std::string& what, std::vector<std::string> witnesses)
      : Error(what), witnesses_(std::move(witnesses)) {}

  const std::vector<std::string>& witnesses() const noexcept { return witnesses_; }

 private:
  std::vector<std::string> witnesses_;
};

}  // namespace lorcomp
