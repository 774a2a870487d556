#pragma once

#include <stdexcept>
#include <string>

namespace gapchannel {

/// Invalid model parameters (indices out of range, negative couplings, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative procedure did not converge. Carries the last energy and an
/// estimate of the gap inferred from the observed convergence rate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_energy, double gap_estimate)
      : std::runtime_error(what), last_energy_(last_energy), gap_estimate_(gap_estimate) {}

  double last_energy() const { return last_energy_; }
  double gap_estimate() const { return gap_estimate_; }

 private:
  double last_energy_;
  double gap_estimate_;
};

/// The quadratic Hamiltonian is not bounded from below.
class StabilityError : public std::runtime_error {
 public:
  StabilityError(const std::string& what, double min_eigenvalue)
      : std::runtime_error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// Operation requested outside the regime where it is defined.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Frequency within the exclusion window of a band edge, where the density of
/// states diverges.
class VanHoveError : public RegimeError {
 public:
  using RegimeError::RegimeError;
};

/// Two independent evaluation routes disagree.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested problem exceeds a hard size cap.
class SizeCapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Error while reading a run configuration; `line()` is 1-based, 0 when the
/// problem is not tied to a line (e.g. a missing key).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line),
        message_(message) {}
  int line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  std::string message_;
};

}  // namespace gapchannel
