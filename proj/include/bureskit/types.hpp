#ifndef BURESKIT_TYPES_HPP
#define BURESKIT_TYPES_HPP

#include <complex>

#include <Eigen/Dense>

#include "bureskit/errors.hpp"
#include "bureskit/tolerances.hpp"

namespace bureskit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Entrywise infinity norm, max_ij |m_ij|.
double max_abs(const CMatrix& m);
double max_abs(const RMatrix& m);

/// max_ij |m_ij - conj(m_ji)|.
double herm_defect(const CMatrix& m);

/// A positive definite Hermitian matrix. Validation happens at construction:
/// hermiticity within tol.herm relative to the largest entry, positivity via
/// a Cholesky factorization with strictly positive pivots (no eigenvalues).
class StateMatrix {
 public:
  explicit StateMatrix(CMatrix entries, const Tolerances& tol = Tolerances::defaults());

  int dim() const { return int(entries_.rows()); }
  const CMatrix& entries() const { return entries_; }
  double trace() const { return entries_.trace().real(); }
  bool is_trace_one(double slack = 1e-12) const { return std::abs(trace() - 1.0) <= slack; }

 private:
  CMatrix entries_;
};

/// A Hermitian matrix, the tangent-vector type of the manifold of states.
class TangentMatrix {
 public:
  explicit TangentMatrix(CMatrix entries, const Tolerances& tol = Tolerances::defaults());

  int dim() const { return int(entries_.rows()); }
  const CMatrix& entries() const { return entries_; }

 private:
  CMatrix entries_;
};

/// Throws ValidationError unless a and b act on the same dimension.
void require_same_dim(const StateMatrix& a, const TangentMatrix& b);

}  // namespace bureskit

#endif
