#pragma once

#include <stdexcept>
#include <string>

namespace minbasis {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes, grades or fields of the operands do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates the documented precondition of an operation.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A floating-point computation broke down (SVD failure, inconsistent
/// least-squares system, certification lost after extraction).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed polynomial-matrix file or JSON payload.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Raised when the row space is not of full normal rank and the minimal-index
/// recursion therefore does not apply.
class NotFullNormalRankError : public PreconditionError {
 public:
  NotFullNormalRankError(long stabilized_rank, long rows)
      : PreconditionError("matrix is not of full row normal rank: Sylvester rank increments stabilize at " +
                          std::to_string(stabilized_rank) + " < " + std::to_string(rows)),
        stabilized_rank_(stabilized_rank) {}

  long stabilized_rank() const noexcept { return stabilized_rank_; }

 private:
  long stabilized_rank_;
};

/// A perturbation is too large for the dual perturbation bound to apply.
class AdmissibilityError : public PreconditionError {
 public:
  AdmissibilityError(double applied, double admissible)
      : PreconditionError("perturbation not admissible: ||S1(dM)||_2 = " + std::to_string(applied) +
                          " is not below the admissible radius " + std::to_string(admissible)),
        applied_(applied),
        admissible_(admissible) {}

  double applied() const noexcept { return applied_; }
  double admissible() const noexcept { return admissible_; }

 private:
  double applied_;
  double admissible_;
};

}  // namespace minbasis
