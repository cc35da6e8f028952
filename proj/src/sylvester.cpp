#include "bureskit/sylvester.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace bureskit {
namespace detail {

CMatrix chi_eval(const RVector& k, const CMatrix& m) {
  const int n = int(k.size()) - 1;
  const int dim = int(m.rows());
  CMatrix acc = CMatrix::Identity(dim, dim);
  for (int step = 1; step <= n; ++step)
    acc = m * acc + k[step] * CMatrix::Identity(dim, dim);
  return acc;
}

CMatrix chi_block_upper_with(std::span<const CMatrix> powers, const CMatrix& y,
                             const RVector& k) {
  const int n = int(k.size()) - 1;
  // S_m = sum_{j=0}^{m} (-rho)^j Y rho^{m-j};  M = sum_m k_{n-1-m} S_m
  CMatrix s = y;
  CMatrix acc = k[n - 1] * s;
  for (int m = 1; m < n; ++m) {
    s = -powers[1] * s + y * powers[std::size_t(m)];
    acc += k[n - 1 - m] * s;
  }
  return acc;
}

SylvesterSolution solve_block_poly_with(const CMatrix& rho, std::span<const CMatrix> powers,
                                        const RVector& k, const CMatrix& y) {
  CMatrix m = chi_block_upper_with(powers, y, k);
  CMatrix w = chi_eval(k, CMatrix(-rho));
  Eigen::PartialPivLU<CMatrix> lu(w);
  const double rc = lu.rcond();
  if (!(rc > 1e3 * std::numeric_limits<double>::epsilon()))
    throw ConditioningError("solve_block_poly: chi(-rho) is numerically singular", 1.0 / rc);
  SylvesterSolution sol;
  sol.method = SolveMethod::block_poly;
  sol.x = -lu.solve(m);
  sol.residual = max_abs(CMatrix(rho * sol.x + sol.x * rho - y));
  // Hermitian Y gives Hermitian X; the asymmetry is recorded, then removed
  sol.asymmetry = herm_defect(sol.x);
  sol.x = (sol.x + sol.x.adjoint().eval()) / 2.0;
  return sol;
}

}  // namespace detail

CMatrix chi_block_upper(const StateMatrix& rho, const CMatrix& y, const CharInvariants& inv) {
  const int n = rho.dim();
  if (y.rows() != n || y.cols() != n)
    throw ValidationError("chi_block_upper: dimension mismatch");
  if (inv.n != n) throw ValidationError("chi_block_upper: invariants belong to another dimension");
  std::vector<CMatrix> powers(static_cast<std::size_t>(n));
  powers[0] = CMatrix::Identity(n, n);
  for (int i = 1; i < n; ++i) powers[std::size_t(i)] = powers[std::size_t(i - 1)] * rho.entries();
  return detail::chi_block_upper_with(powers, y, inv.k);
}

SylvesterSolution solve_block_poly(const StateMatrix& rho, const TangentMatrix& y) {
  require_same_dim(rho, y);
  const int n = rho.dim();
  CharInvariants inv = char_poly(rho);
  std::vector<CMatrix> powers(static_cast<std::size_t>(n));
  powers[0] = CMatrix::Identity(n, n);
  for (int i = 1; i < n; ++i) powers[std::size_t(i)] = powers[std::size_t(i - 1)] * rho.entries();
  return detail::solve_block_poly_with(rho.entries(), powers, inv.k, y.entries());
}

SylvesterSolution solve_dense(const StateMatrix& rho, const TangentMatrix& y) {
  require_same_dim(rho, y);
  const int n = rho.dim();
  const CMatrix& r = rho.entries();
  // column-major vec: vec(rho X) = (I (x) rho) vec X, vec(X rho) = (rho^T (x) I) vec X
  CMatrix big = CMatrix::Zero(n * n, n * n);
  for (int bc = 0; bc < n; ++bc)
    for (int br = 0; br < n; ++br) {
      // (I (x) rho) block diag
      if (bc == br) big.block(br * n, bc * n, n, n) += r;
      // (rho^T (x) I): block (br, bc) = rho^T(br,bc) * I = rho(bc,br) * I
      big.block(br * n, bc * n, n, n) +=
          r(bc, br) * CMatrix::Identity(n, n);
    }
  Eigen::VectorXcd rhs(n * n);
  for (int c = 0; c < n; ++c)
    for (int rr = 0; rr < n; ++rr) rhs[c * n + rr] = y.entries()(rr, c);
  Eigen::PartialPivLU<CMatrix> lu(big);
  const double rc = lu.rcond();
  if (!(rc > 1e3 * std::numeric_limits<double>::epsilon()))
    throw ConditioningError("solve_dense: L+R is numerically singular", 1.0 / rc);
  Eigen::VectorXcd xv = lu.solve(rhs);
  SylvesterSolution sol;
  sol.method = SolveMethod::dense;
  sol.x.resize(n, n);
  for (int c = 0; c < n; ++c)
    for (int rr = 0; rr < n; ++rr) sol.x(rr, c) = xv[c * n + rr];
  sol.residual = max_abs(CMatrix(r * sol.x + sol.x * r - y.entries()));
  sol.asymmetry = herm_defect(sol.x);
  sol.x = (sol.x + sol.x.adjoint().eval()) / 2.0;
  return sol;
}

}  // namespace bureskit
