#ifndef BURESKIT_DETAIL_STATE_CORE_HPP
#define BURESKIT_DETAIL_STATE_CORE_HPP

#include <vector>

#include "bureskit/detail/dd.hpp"
#include "bureskit/invariants.hpp"
#include "bureskit/types.hpp"

namespace bureskit::detail {

/// Compensated-precision invariants of one state: powers of rho, power
/// traces, characteristic coefficients. Built once, shared by the invariant,
/// coefficient and metric kernels.
struct StateCore {
  int n = 0;
  std::vector<CMat> powers;  // rho^0 .. rho^n
  std::vector<DD> p;         // p[i] = Tr rho^i, i = 0 .. 2n-1 (p[0] = n)
  std::vector<DD> k;         // chi(t) = sum k[m] t^{n-m}, k[0] = 1
  std::vector<DD> e;         // e[i] = (-1)^i k[i]

  static StateCore build(const CMatrix& rho);
};

CMat lift(const CMatrix& m);
CMatrix lower(const CMat& m);
RMatrix lower(const RMat& m);
RMat lift_real(const RMatrix& m);

/// Newton recursion k_m = -(1/m) sum_{r=1}^{m} p_r k_{m-r}.
std::vector<DD> newton_k_from_p(const std::vector<DD>& p, int n);

/// p_m = (-1)^{m+1} m e_m + sum_{r=1}^{m-1} (-1)^{r+1} e_r p_{m-r}, e_r = 0
/// beyond n; extends power traces past the matrix dimension.
std::vector<DD> power_traces_from_e(const std::vector<DD>& e, int m_max);

/// e_m = (1/m) sum_{r=1}^{m} (-1)^{r+1} p_r e_{m-r}.
std::vector<DD> elementary_from_p(const std::vector<DD>& p);

/// Hankel matrix P_ij = p_{i+j-1}, 1-based subscripts.
RMat gram_from_traces(const std::vector<DD>& p, int n);

/// Genericity verdict from det P: normalized by (max(1, p_1)/n)^(n^2), the
/// mean-eigenvalue scale, so the decision is invariant under rho -> c rho
/// above the absolute floor.
GenericityReport genericity_from(DD det_p, DD p1, int n, double tol_generic);

}  // namespace bureskit::detail

#endif
