#pragma once

#include <stdexcept>
#include <string>

namespace ampkit {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Vector length / dimension mismatch.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside its mathematical domain (e.g. Sigma2 <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Ensemble or operator cannot be constructed from the given parameters.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// AMP iterates became non-finite. Carries the iteration index.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int iteration)
      : Error(what), iteration_(iteration) {}
  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

/// Bisection bracket does not straddle the transition.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Experiment configuration failed to parse or validate.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ampkit
