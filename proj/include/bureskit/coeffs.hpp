#ifndef BURESKIT_COEFFS_HPP
#define BURESKIT_COEFFS_HPP

#include <memory>

#include "bureskit/detail/dd.hpp"
#include "bureskit/invariants.hpp"
#include "bureskit/types.hpp"

namespace bureskit {

/// Companion matrix K of chi: subdiagonal shift with last row
/// (-k_n, ..., -k_1). Multiplication by K reduces powers of rho modulo
/// chi(rho) = 0, so K shares the characteristic polynomial of rho.
RMatrix companion_matrix(const CharInvariants& inv);

/// Right-hand side C of the coefficient equation K^T A + A K = C: the matrix
/// with a single 1 in the (1,1) corner, representing the identity operator.
RMatrix identity_rep(int n);

/// N_ij = (-1)^{i+1} k_{n+1-i-j}, out-of-range k = 0. The closed form of the
/// upper-right chi block for the (K^T, K, C) system.
RMatrix matrix_n(const CharInvariants& inv);

/// Same N accumulated as sum_{i} k_{n-i} sum_{j} (-K^T)^j C K^{i-j-1};
/// a check path for matrix_n.
RMatrix matrix_n_sum_form(const CharInvariants& inv);

enum class CoeffRoute { companion, smith };

/// Coefficients of (L+R)^{-1} = sum a_ij L^{i-1} R^{j-1} in the rho-power
/// basis. Symmetric whenever rho is generic. The entries reach magnitudes
/// around 1/det(P), so `precise` keeps the compensated-precision values the
/// routes were solved in; apply_coeff_operator consumes those.
struct CoeffMatrix {
  int n = 0;
  RMatrix entries;
  CoeffRoute route = CoeffRoute::companion;
  double sylvester_residual = 0.0;   // ||K^T A + A K - C||_inf at build time
  double condition_estimate = 0.0;
  std::shared_ptr<const detail::RMat> precise;
};

/// A = -chi(-K^T)^{-1} N, via Horner evaluation and a dense solve.
CoeffMatrix coeff_companion(const CharInvariants& inv);

/// Smith's cofactor formula:
/// a_ij = (-1)^i/(2 det H) sum_{r,s} (-1)^r k_r k_s Phi((i+j+r+s)/2).
CoeffMatrix coeff_smith(const CharInvariants& inv);

struct SmithTableau {
  int n = 0;
  RMatrix h;          // h(i,j) = k_{2j-i}, 1-based subscripts
  double det_h = 0.0;
  RVector cofactors;  // Phi(1..n), first-row cofactors of H
};

SmithTableau smith_tableau(const CharInvariants& inv);

/// |det H - (-1)^{n(n+1)/2} prod(lambda) prod_{i<j}(lambda_i+lambda_j)| /
/// |det H|, eigenvalues supplied by the caller (diagnostic).
double det_h_identity_residual(const CharInvariants& inv, const RVector& eigenvalues);

/// sum_ij a_ij rho^{i-1} Y rho^{j-1}, evaluated in compensated arithmetic.
CMatrix apply_coeff_operator(const StateMatrix& rho, const CoeffMatrix& a, const CMatrix& y);

}  // namespace bureskit

#endif
