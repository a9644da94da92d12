#pragma once

#include <stdexcept>
#include <string>

namespace madstat {

// Input outside an operation's mathematical domain (empty series, non-finite
// values, alpha outside (1, 2), non-PSD covariance, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid configuration: bandwidth too large, malformed generator or study
// file, unreadable CSV cells.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested asymptotic regime does not apply to the law or the data
// (infinite variance under a Gaussian limit, atom under sigma_theta_sq, ...).
class RegimeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace madstat
