#ifndef BURESKIT_ERRORS_HPP
#define BURESKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bureskit {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The input violates a structural contract: wrong shape, not Hermitian
/// beyond tolerance, not positive definite, malformed file, bad argument.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The input is structurally valid but the requested computation is
/// numerically unreliable (near-singular solve, vanishing determinant).
class ConditioningError : public Error {
 public:
  explicit ConditioningError(const std::string& what, double condition_estimate = 0.0)
      : Error(what), condition_estimate_(condition_estimate) {}

  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// The operation is only defined at generic states (nondegenerate spectrum).
class GenericityError : public ConditioningError {
 public:
  using ConditioningError::ConditioningError;
};

}  // namespace bureskit

#endif
