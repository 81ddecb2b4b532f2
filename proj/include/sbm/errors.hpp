#pragma once

#include <stdexcept>
#include <string>

namespace sbm {

/// A function was evaluated outside the region where it is defined or finite.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested quantity has no representation for this catalog kind.
class UnsupportedKindError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid user-supplied configuration (bad flags, malformed catalog JSON, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A yes/no question (e.g. transience in d <= 2) that cannot be settled from
/// the information supplied.
class UndecidableError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A numerical procedure (quadrature, Laplace inversion) did not reach its
/// tolerance.  Carries the achieved error estimate.
class NumericAccuracyError : public std::runtime_error {
 public:
  NumericAccuracyError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace sbm
