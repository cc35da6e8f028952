#include "bureskit/coeffs.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bureskit/detail/coeff_kernels.hpp"
#include "bureskit/detail/state_core.hpp"

namespace bureskit {
namespace detail {

// eps of the compensated arithmetic; conditioning refusals trip when the
// internal precision is exhausted, not before
constexpr double kDDEps = 4.93e-32;
constexpr double kCondLimit = 1.0 / (1e3 * kDDEps);

std::vector<DD> lift_k(const CharInvariants& inv) {
  std::vector<DD> k(std::size_t(inv.n) + 1);
  for (int i = 0; i <= inv.n; ++i) k[std::size_t(i)] = DD(inv.k[i]);
  return k;
}

RMat companion_dd(const std::vector<DD>& k) {
  const int n = int(k.size()) - 1;
  RMat m(n, n);
  for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = DD(1.0);
  for (int j = 0; j < n; ++j) m(n - 1, j) = -k[std::size_t(n - j)];
  return m;
}

RMat transpose(const RMat& m) {
  RMat t(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

// chi(M) by Horner: ((M + k_1) M + k_2) M + ... + k_n
RMat chi_eval_dd(const std::vector<DD>& k, const RMat& m) {
  const int n = int(k.size()) - 1;
  RMat acc = RMat::identity(m.rows());
  for (int step = 1; step <= n; ++step) {
    acc = matmul(m, acc);
    for (int i = 0; i < m.rows(); ++i) acc(i, i) += k[std::size_t(step)];
  }
  return acc;
}

RMat matrix_n_dd(const std::vector<DD>& k) {
  const int n = int(k.size()) - 1;
  RMat m(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const int idx = n + 1 - i - j;
      if (idx < 0 || idx > n) continue;
      m(i - 1, j - 1) = (i % 2 ? k[std::size_t(idx)] : -k[std::size_t(idx)]);
    }
  return m;
}

double coeff_sylvester_residual(const std::vector<DD>& k, const RMat& a) {
  const int n = int(k.size()) - 1;
  RMat kc = companion_dd(k);
  RMat kt = transpose(kc);
  RMat lhs = matmul(kt, a);
  RMat rhs = matmul(a, kc);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      DD v = lhs(i, j) + rhs(i, j);
      if (i == 0 && j == 0) v -= DD(1.0);
      worst = std::max(worst, std::abs(v.to_double()));
    }
  return worst;
}

CoeffResult coeff_companion_dd(const std::vector<DD>& k) {
  const int n = int(k.size()) - 1;
  RMat neg_kt = transpose(companion_dd(k));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) neg_kt(i, j) = -neg_kt(i, j);
  DDLu lu(chi_eval_dd(k, neg_kt));
  if (lu.singular())
    throw ConditioningError("coeff_companion: chi(-K^T) is numerically singular",
                            std::numeric_limits<double>::infinity());
  CoeffResult out;
  out.condition = lu.condition_estimate();
  if (out.condition > kCondLimit)
    throw ConditioningError("coeff_companion: chi(-K^T) too ill-conditioned", out.condition);
  RMat rhs = matrix_n_dd(k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rhs(i, j) = -rhs(i, j);
  out.a = lu.solve(rhs);
  out.residual = coeff_sylvester_residual(k, out.a);
  return out;
}

SmithCore smith_core_dd(const std::vector<DD>& k) {
  const int n = int(k.size()) - 1;
  auto kk = [&](int idx) { return (idx >= 0 && idx <= n) ? k[std::size_t(idx)] : DD(); };
  SmithCore core;
  core.h = RMat(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) core.h(i - 1, j - 1) = kk(2 * j - i);
  core.det_h = DDLu(core.h).determinant();
  core.phi.assign(std::size_t(n) + 1, DD());
  for (int m = 1; m <= n; ++m) {
    if (n == 1) {
      core.phi[std::size_t(m)] = DD(1.0);
      continue;
    }
    RMat minor(n - 1, n - 1);
    for (int i = 1; i < n; ++i) {
      int cc = 0;
      for (int j = 0; j < n; ++j) {
        if (j == m - 1) continue;
        minor(i - 1, cc++) = core.h(i, j);
      }
    }
    DD d = DDLu(std::move(minor)).determinant();
    core.phi[std::size_t(m)] = (m % 2 ? d : -d);  // cofactor sign (-1)^{1+m}
  }
  return core;
}

CoeffResult coeff_smith_dd(const std::vector<DD>& k) {
  const int n = int(k.size()) - 1;
  SmithCore core = smith_core_dd(k);
  DDLu lu(core.h);
  if (lu.singular() || core.det_h.hi == 0.0)
    throw ConditioningError("coeff_smith: det H is numerically zero",
                            std::numeric_limits<double>::infinity());
  CoeffResult out;
  out.condition = lu.condition_estimate();
  if (out.condition > kCondLimit)
    throw ConditioningError("coeff_smith: H too ill-conditioned", out.condition);
  auto kk = [&](int idx) { return (idx >= 0 && idx <= n) ? k[std::size_t(idx)] : DD(); };
  out.a = RMat(n, n);
  DD half_det = DD(2.0) * core.det_h;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      DD acc;
      for (int r = 0; r <= n - i; ++r)
        for (int s = 0; s <= n - j; ++s) {
          const int total = i + j + r + s;
          if (total % 2) continue;  // Phi of a half-integer vanishes
          DD term = kk(r) * kk(s) * core.phi[std::size_t(total / 2)];
          acc += (r % 2 ? -term : term);
        }
      acc = acc / half_det;
      out.a(i - 1, j - 1) = (i % 2 ? -acc : acc);
    }
  out.residual = coeff_sylvester_residual(k, out.a);
  return out;
}

}  // namespace detail

namespace {

void check_k(const CharInvariants& inv, const char* what) {
  if (inv.n < 1 || inv.k.size() != inv.n + 1)
    throw ValidationError(std::string(what) + ": malformed invariants");
  if (std::abs(inv.k[0] - 1.0) > 1e-12)
    throw ValidationError(std::string(what) + ": k_0 must be 1");
  if (inv.k[inv.n] == 0.0)
    throw ValidationError(std::string(what) + ": singular state, k_n = 0");
}

}  // namespace

RMatrix companion_matrix(const CharInvariants& inv) {
  check_k(inv, "companion_matrix");
  return detail::lower(detail::companion_dd(detail::lift_k(inv)));
}

RMatrix identity_rep(int n) {
  RMatrix c = RMatrix::Zero(n, n);
  c(0, 0) = 1.0;
  return c;
}

RMatrix matrix_n(const CharInvariants& inv) {
  check_k(inv, "matrix_n");
  return detail::lower(detail::matrix_n_dd(detail::lift_k(inv)));
}

RMatrix matrix_n_sum_form(const CharInvariants& inv) {
  check_k(inv, "matrix_n_sum_form");
  const int n = inv.n;
  const RMatrix kc = companion_matrix(inv);
  const RMatrix neg_kt = -kc.transpose();
  const RMatrix c = identity_rep(n);
  // S_m = sum_{j=0}^{m} (-K^T)^j C K^{m-j}; S_m = (-K^T) S_{m-1} + C K^m
  RMatrix kpow = RMatrix::Identity(n, n);
  RMatrix s = c;
  RMatrix acc = inv.k[n - 1] * s;
  for (int m = 1; m < n; ++m) {
    kpow *= kc;
    s = neg_kt * s + c * kpow;
    acc += inv.k[n - 1 - m] * s;
  }
  return acc;
}

CoeffMatrix coeff_companion(const CharInvariants& inv) {
  check_k(inv, "coeff_companion");
  detail::CoeffResult r = detail::coeff_companion_dd(detail::lift_k(inv));
  CoeffMatrix out;
  out.n = inv.n;
  out.entries = detail::lower(r.a);
  out.route = CoeffRoute::companion;
  out.sylvester_residual = r.residual;
  out.condition_estimate = r.condition;
  out.precise = std::make_shared<const detail::RMat>(std::move(r.a));
  return out;
}

CoeffMatrix coeff_smith(const CharInvariants& inv) {
  check_k(inv, "coeff_smith");
  detail::CoeffResult r = detail::coeff_smith_dd(detail::lift_k(inv));
  CoeffMatrix out;
  out.n = inv.n;
  out.entries = detail::lower(r.a);
  out.route = CoeffRoute::smith;
  out.sylvester_residual = r.residual;
  out.condition_estimate = r.condition;
  out.precise = std::make_shared<const detail::RMat>(std::move(r.a));
  return out;
}

SmithTableau smith_tableau(const CharInvariants& inv) {
  check_k(inv, "smith_tableau");
  detail::SmithCore core = detail::smith_core_dd(detail::lift_k(inv));
  SmithTableau t;
  t.n = inv.n;
  t.h = detail::lower(core.h);
  t.det_h = core.det_h.to_double();
  t.cofactors.resize(inv.n);
  for (int m = 1; m <= inv.n; ++m) t.cofactors[m - 1] = core.phi[std::size_t(m)].to_double();
  return t;
}

double det_h_identity_residual(const CharInvariants& inv, const RVector& eigenvalues) {
  check_k(inv, "det_h_identity_residual");
  if (eigenvalues.size() != inv.n)
    throw ValidationError("det_h_identity_residual: eigenvalue count mismatch");
  const int n = inv.n;
  detail::DD det_h = detail::smith_core_dd(detail::lift_k(inv)).det_h;
  double prod = ((n * (n + 1) / 2) % 2) ? -1.0 : 1.0;
  for (int i = 0; i < n; ++i) prod *= eigenvalues[i];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) prod *= eigenvalues[i] + eigenvalues[j];
  return std::abs(det_h.to_double() - prod) / std::abs(det_h.to_double());
}

CMatrix apply_coeff_operator(const StateMatrix& rho, const CoeffMatrix& a, const CMatrix& y) {
  const int n = rho.dim();
  if (a.n != n || y.rows() != n || y.cols() != n)
    throw ValidationError("apply_coeff_operator: dimension mismatch");
  std::vector<detail::CMat> pws;
  pws.reserve(n);
  pws.push_back(detail::CMat::identity(n));
  detail::CMat lifted = detail::lift(rho.entries());
  for (int i = 1; i < n; ++i) pws.push_back(matmul(pws.back(), lifted));
  detail::CMat ylift = detail::lift(y);
  detail::CMat acc(n, n);
  for (int i = 0; i < n; ++i) {
    detail::CMat left = matmul(pws[std::size_t(i)], ylift);
    for (int j = 0; j < n; ++j) {
      detail::CMat term = matmul(left, pws[std::size_t(j)]);
      detail::DD w = a.precise ? (*a.precise)(i, j) : detail::DD(a.entries(i, j));
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          acc(r, c).re += w * term(r, c).re;
          acc(r, c).im += w * term(r, c).im;
        }
    }
  }
  return detail::lower(acc);
}

}  // namespace bureskit
