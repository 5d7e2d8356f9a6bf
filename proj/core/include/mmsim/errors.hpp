#pragma once

#include <stdexcept>
#include <string>

namespace mmsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested photon-number cutoff cannot hold the state to the configured tail tolerance.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition (range, normalization, positivity).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Tomography data do not determine a unique two-qubit state.
class RankDeficiencyError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver hit its iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : Error(what), iterations_(iterations), residual_(residual) {}
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// An analytic model produced values outside its physical range.
class ModelInconsistencyError : public Error {
 public:
  using Error::Error;
};

/// A ratio or normalization would divide by zero.
class UndefinedInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace mmsim
