#pragma once

#include <stdexcept>
#include <string>

namespace cvlqr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SingularBimatrix : public Error {
 public:
  using Error::Error;
};

/// A Hermitian bimatrix candidate whose blocks are not Hermitian/symmetric.
class StructureViolation : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// Q or R is not Hermitian positive definite.
class InvalidWeights : public Error {
 public:
  using Error::Error;
};

/// Iteration budget exhausted before the step tolerance was met.
class NotConvergent : public Error {
 public:
  NotConvergent(const std::string& what, int iterations)
      : Error(what), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

/// Iterates grew past the divergence bound. For the Riccati fixed-point
/// maps this happens exactly when the system is not stabilizable.
class Diverged : public Error {
 public:
  Diverged(const std::string& what, int iterations)
      : Error(what), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

}  // namespace cvlqr
