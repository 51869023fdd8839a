#pragma once

#include <stdexcept>
#include <string>

namespace selfnorm {

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative routine (root find, Jacobi sweep) exceeded its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix required to be invertible is numerically singular.
class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The closed-form vector boundary needs a super-Gaussian family.
class NotSuperGaussianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A radius term requires a finite norm bound that was never supplied.
class MissingBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Membership was queried on a confidence set marked invalid.
class InvalidEllipsoidError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Vector / matrix dimensions do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An observation violates a hard norm cap.
class NormError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A process specification fails validation.
class InvalidSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace selfnorm
