#ifndef BURESKIT_INVARIANTS_HPP
#define BURESKIT_INVARIANTS_HPP

#include "bureskit/types.hpp"

namespace bureskit {

/// Scalar invariants of a state: coefficients k of chi(t) = det(t·1 - rho) =
/// t^n + k_1 t^{n-1} + ... + k_n, elementary invariants e_i = (-1)^i k_i and
/// power traces p_i = Tr rho^i. Index m of each vector holds the subscript-m
/// quantity; k[0] = e[0] = 1 and p[0] = n. p extends to 2n-1.
struct CharInvariants {
  int n = 0;
  RVector k;  // size n+1
  RVector e;  // size n+1
  RVector p;  // size 2n (p[1] .. p[2n-1] meaningful, p[0] = n)
};

/// p_i = Tr rho^i for i = 1..m_max, by repeated multiplication.
RVector power_traces(const StateMatrix& rho, int m_max);

/// Characteristic coefficients via the Newton recursion on power traces
/// (equivalent to Faddeev-LeVerrier); fills e and the extended p vector.
CharInvariants char_poly(const StateMatrix& rho);

/// Newton conversions between elementary invariants and power traces.
/// Vectors are subscript-1-based: in[0] is the degree-1 entry.
RVector e_from_p(const RVector& p);
RVector p_from_e(const RVector& e, int m_max);

/// Independent check path: the same conversions as explicit i x i
/// determinants, e_i = det[...]/i! and p_i = det[...].
double e_from_p_determinant(const RVector& p, int i);
double p_from_e_determinant(const RVector& e, int i);

struct GramMatrix {
  int n = 0;
  RMatrix entries;  // entries(i,j) = p_{i+j+1} for 0-based i,j
};

GramMatrix gram_matrix(const StateMatrix& rho);
GramMatrix gram_matrix(const CharInvariants& inv);

/// Relative residual of the shift relation: row i+1 of P equals row 1 times
/// K^i, K the companion matrix of chi.
double gram_row_relation_residual(const GramMatrix& gram, const RMatrix& companion);

struct GenericityReport {
  bool generic = false;
  double det_p = 0.0;       // det of the Hankel matrix P
  double normalized = 0.0;  // |det P| / (max(1, p_1)/n)^(n^2)
  double threshold = 0.0;   // tolerance the normalized value was compared to
};

/// Genericity test: nondegenerate spectrum iff det P != 0; numerically,
/// the scale-normalized |det P| must clear tol_generic.
GenericityReport is_generic(const StateMatrix& rho, double tol_generic);
GenericityReport is_generic(const StateMatrix& rho);

/// ||chi(rho)||_inf; vanishes by Cayley-Hamilton.
double cayley_hamilton_residual(const StateMatrix& rho, const CharInvariants& inv);

/// max_m |m k_m + sum_{r<=m} p_r k_{m-r}| / max(1, |p|_inf^m) for m <= 2n-1.
double newton_identity_residual(const CharInvariants& inv);

}  // namespace bureskit

#endif
