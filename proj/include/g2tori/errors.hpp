#pragma once

#include <stdexcept>
#include <string>

namespace g2t {

/// Malformed or out-of-domain input (bad prime, zero where nonzero required, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested combination the library does not handle (rank > 8, unsupported field).
class UnsupportedError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// A structural precondition on algebra elements failed (orthogonality, norms).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SingularFormError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when inverting an element of norm zero.
class IsotropicElementError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The computation could not certify an answer either way.
class Indeterminate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// p-adic computation hit its depth/precision cap without certifying an answer.
class PrecisionExhausted : public Indeterminate {
 public:
  PrecisionExhausted(const std::string& what, std::string prime) : Indeterminate(what), prime_(std::move(prime)) {}
  const std::string& prime() const noexcept { return prime_; }

 private:
  std::string prime_;
};

}  // namespace g2t
