#ifndef BURESKIT_SYLVESTER_HPP
#define BURESKIT_SYLVESTER_HPP

#include <span>

#include "bureskit/invariants.hpp"
#include "bureskit/types.hpp"

namespace bureskit {

enum class SolveMethod { block_poly, dense };

/// Solution of rho X + X rho = Y with its build-time diagnostics.
struct SylvesterSolution {
  CMatrix x;
  double residual = 0.0;   // ||rho X + X rho - Y||_inf
  double asymmetry = 0.0;  // ||X - X^dagger||_inf before symmetrization
  SolveMethod method = SolveMethod::block_poly;
};

/// M = sum_{i=1}^{n} k_{n-i} sum_{j=0}^{i-1} (-rho)^j Y rho^{i-j-1}; the
/// upper-right block of chi applied to [[-rho, Y], [0, rho]].
CMatrix chi_block_upper(const StateMatrix& rho, const CMatrix& y, const CharInvariants& inv);

/// X = -chi(-rho)^{-1} M; positivity of rho keeps chi(-rho) invertible.
SylvesterSolution solve_block_poly(const StateMatrix& rho, const TangentMatrix& y);

/// Reference solver: assembles the n^2 x n^2 matrix of L+R over vectorized
/// matrices and solves directly. Ground truth for tests and diagnostics.
SylvesterSolution solve_dense(const StateMatrix& rho, const TangentMatrix& y);

namespace detail {

/// Horner evaluation of chi at m.
CMatrix chi_eval(const RVector& k, const CMatrix& m);

/// chi_block_upper with precomputed powers of rho (powers[i] = rho^i).
CMatrix chi_block_upper_with(std::span<const CMatrix> powers, const CMatrix& y,
                             const RVector& k);

SylvesterSolution solve_block_poly_with(const CMatrix& rho, std::span<const CMatrix> powers,
                                        const RVector& k, const CMatrix& y);

}  // namespace detail

}  // namespace bureskit

#endif
