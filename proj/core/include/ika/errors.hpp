#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ika {

// Base class for all library errors that are not plain precondition
// violations (those use std::invalid_argument).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cholesky hit a non-positive pivot; carries the pivot index.
class NotPositiveDefiniteError : public Error {
 public:
  NotPositiveDefiniteError(std::size_t pivot, const std::string& what)
      : Error(what), pivot_(pivot) {}
  std::size_t pivot() const { return pivot_; }

 private:
  std::size_t pivot_;
};

// The symmetric eigensolver exceeded its sweep cap on some eigenvalue.
class EigenConvergenceError : public Error {
 public:
  EigenConvergenceError(int iterations, const std::string& what)
      : Error(what), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

// The basis matrix B is numerically rank deficient on the fitting sample:
// the Cholesky of P~ failed even after one jitter retry.
class RankDeficientBasisError : public Error {
 public:
  RankDeficientBasisError(std::size_t pivot, const std::string& what)
      : Error(what), pivot_(pivot) {}
  std::size_t pivot() const { return pivot_; }

 private:
  std::size_t pivot_;
};

// All eigenvalues of the landmark Gram matrix fell below the drop threshold.
class DegenerateLandmarksError : public Error {
 public:
  using Error::Error;
};

// File layer failures, distinguishable by kind.
class IoError : public Error {
 public:
  enum class Kind {
    OpenFailed,
    WriteFailed,
    BadMagic,
    BadVersion,
    Truncated,
    Malformed,
  };

  IoError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace ika
