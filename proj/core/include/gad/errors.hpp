#pragma once

#include <stdexcept>
#include <string>

namespace gad {

/// Malformed or inconsistent input (unknown vertex, bad file, bad flag).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A well-formed input that lies outside an operation's domain
/// (e.g. asking for the representation gradation of an ungradable graph).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A theorem-level invariant failed on data that satisfied its hypotheses.
/// `reference` names the statement that was being checked.
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(std::string reference, const std::string& what)
      : std::runtime_error(what), reference_(std::move(reference)) {}

  const std::string& reference() const noexcept { return reference_; }

 private:
  std::string reference_;
};

}  // namespace gad
