#pragma once

#include <stdexcept>
#include <string>

namespace ringfwm {

/// A value lies outside the domain of an operation (negative power, λ ≤ 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inputs are missing or inconsistent (missing γ, bad ring JSON, CLI misuse).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A fit could not produce a usable result.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Data read from disk violates a structural rule.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text could not be parsed; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ringfwm
