#include "bureskit/invariants.hpp"

#include <cmath>
#include <string>

#include "bureskit/detail/state_core.hpp"

namespace bureskit {
namespace detail {

CMat lift(const CMatrix& m) {
  CMat out(int(m.rows()), int(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      out(i, j) = DDC(DD(m(i, j).real()), DD(m(i, j).imag()));
  return out;
}

CMatrix lower(const CMat& m) {
  CMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      out(i, j) = Complex(m(i, j).re.to_double(), m(i, j).im.to_double());
  return out;
}

RMatrix lower(const RMat& m) {
  RMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

RMat lift_real(const RMatrix& m) {
  RMat out(int(m.rows()), int(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = DD(m(i, j));
  return out;
}

std::vector<DD> newton_k_from_p(const std::vector<DD>& p, int n) {
  std::vector<DD> k(n + 1);
  k[0] = DD(1.0);
  for (int m = 1; m <= n; ++m) {
    DD acc;
    for (int r = 1; r <= m; ++r) acc += p[r] * k[m - r];
    k[m] = -acc / DD(double(m));
  }
  return k;
}

std::vector<DD> power_traces_from_e(const std::vector<DD>& e, int m_max) {
  const int n = int(e.size()) - 1;
  std::vector<DD> p(m_max + 1);
  p[0] = DD(double(n));
  for (int m = 1; m <= m_max; ++m) {
    DD acc;
    if (m <= n) {
      acc = DD(m % 2 ? double(m) : -double(m)) * e[m];
    }
    for (int r = 1; r < m && r <= n; ++r) {
      DD term = e[r] * p[m - r];
      acc += (r % 2 ? term : -term);
    }
    p[m] = acc;
  }
  return p;
}

std::vector<DD> elementary_from_p(const std::vector<DD>& p) {
  const int m_max = int(p.size()) - 1;
  std::vector<DD> e(m_max + 1);
  e[0] = DD(1.0);
  for (int m = 1; m <= m_max; ++m) {
    DD acc;
    for (int r = 1; r <= m; ++r) {
      DD term = p[r] * e[m - r];
      acc += (r % 2 ? term : -term);
    }
    e[m] = acc / DD(double(m));
  }
  return e;
}

RMat gram_from_traces(const std::vector<DD>& p, int n) {
  RMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = p[i + j + 1];
  return g;
}

GenericityReport genericity_from(DD det_p, DD p1, int n, double tol_generic) {
  GenericityReport rep;
  rep.det_p = det_p.to_double();
  const double scale = std::max(1.0, p1.to_double()) / n;
  rep.normalized = std::abs(rep.det_p) / std::pow(scale, double(n) * n);
  rep.threshold = tol_generic;
  rep.generic = rep.normalized > tol_generic;
  return rep;
}

StateCore StateCore::build(const CMatrix& rho) {
  StateCore core;
  core.n = int(rho.rows());
  const int n = core.n;
  core.powers.reserve(n + 1);
  core.powers.push_back(CMat::identity(n));
  CMat lifted = lift(rho);
  core.p.assign(2 * n, DD());
  core.p[0] = DD(double(n));
  for (int i = 1; i <= n; ++i) {
    core.powers.push_back(matmul(core.powers.back(), lifted));
    if (i < 2 * n) core.p[i] = trace(core.powers.back()).re;
  }
  core.k = newton_k_from_p(core.p, n);
  core.e.resize(n + 1);
  for (int i = 0; i <= n; ++i) core.e[i] = (i % 2 ? -core.k[i] : core.k[i]);
  // power traces past n follow from the same identity with k_m = 0
  std::vector<DD> ext = power_traces_from_e(core.e, 2 * n - 1);
  for (int m = n + 1; m <= 2 * n - 1; ++m) core.p[m] = ext[m];
  return core;
}

}  // namespace detail

namespace {

RVector lower_vec(const std::vector<detail::DD>& v) {
  RVector out(Eigen::Index(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[Eigen::Index(i)] = v[i].to_double();
  return out;
}

CharInvariants invariants_from_core(const detail::StateCore& core) {
  CharInvariants inv;
  inv.n = core.n;
  inv.k = lower_vec(core.k);
  inv.e = lower_vec(core.e);
  inv.p = lower_vec(core.p);
  return inv;
}

}  // namespace

RVector power_traces(const StateMatrix& rho, int m_max) {
  if (m_max < 1) throw ValidationError("power_traces: m_max must be >= 1");
  const int n = rho.dim();
  detail::CMat power = detail::CMat::identity(n);
  detail::CMat lifted = detail::lift(rho.entries());
  RVector p(m_max);
  const double scale = std::max(1.0, max_abs(rho.entries()));
  double scale_i = 1.0;
  for (int i = 1; i <= m_max; ++i) {
    power = matmul(power, lifted);
    detail::DDC t = trace(power);
    scale_i *= scale * n;
    // traces of Hermitian powers are real; the imaginary residue is rounding
    if (std::abs(t.im.to_double()) > Tolerances::defaults().herm * std::max(1.0, scale_i))
      throw ValidationError("power_traces: trace has a non-negligible imaginary part");
    p[i - 1] = t.re.to_double();
  }
  return p;
}

CharInvariants char_poly(const StateMatrix& rho) {
  return invariants_from_core(detail::StateCore::build(rho.entries()));
}

RVector e_from_p(const RVector& p) {
  if (p.size() < 1) throw ValidationError("e_from_p: empty input");
  std::vector<detail::DD> pv(std::size_t(p.size()) + 1);
  for (Eigen::Index i = 0; i < p.size(); ++i) pv[std::size_t(i) + 1] = detail::DD(p[i]);
  std::vector<detail::DD> ev = detail::elementary_from_p(pv);
  RVector e(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) e[i] = ev[std::size_t(i) + 1].to_double();
  return e;
}

RVector p_from_e(const RVector& e, int m_max) {
  if (e.size() < 1) throw ValidationError("p_from_e: empty input");
  if (m_max < 1) throw ValidationError("p_from_e: m_max must be >= 1");
  std::vector<detail::DD> ev(std::size_t(e.size()) + 1);
  ev[0] = detail::DD(1.0);
  for (Eigen::Index i = 0; i < e.size(); ++i) ev[std::size_t(i) + 1] = detail::DD(e[i]);
  std::vector<detail::DD> pv = detail::power_traces_from_e(ev, m_max);
  RVector p(m_max);
  for (int i = 1; i <= m_max; ++i) p[i - 1] = pv[std::size_t(i)].to_double();
  return p;
}

double e_from_p_determinant(const RVector& p, int i) {
  if (i < 1 || i > p.size()) throw ValidationError("e_from_p_determinant: index out of range");
  // e_i = det [ p_1 1 0 ...; p_2 p_1 2 ...; ...; p_i p_{i-1} ... p_1 ] / i!
  detail::RMat m(i, i);
  for (int r = 0; r < i; ++r) {
    for (int c = 0; c <= r; ++c) m(r, c) = detail::DD(p[r - c]);
    if (r + 1 < i) m(r, r + 1) = detail::DD(double(r + 1));
  }
  detail::DD det = detail::DDLu(std::move(m)).determinant();
  double fact = 1.0;
  for (int f = 2; f <= i; ++f) fact *= f;
  return (det / detail::DD(fact)).to_double();
}

double p_from_e_determinant(const RVector& e, int i) {
  if (i < 1 || i > e.size()) throw ValidationError("p_from_e_determinant: index out of range");
  // p_i = det [ e_1 1 0 ...; 2e_2 e_1 1 ...; ...; i e_i e_{i-1} ... e_1 ]
  detail::RMat m(i, i);
  for (int r = 0; r < i; ++r) {
    m(r, 0) = detail::DD(double(r + 1)) * detail::DD(e[r]);
    for (int c = 1; c <= r; ++c) m(r, c) = detail::DD(e[r - c]);
    if (r + 1 < i) m(r, r + 1) = detail::DD(1.0);
  }
  return detail::DDLu(std::move(m)).determinant().to_double();
}

GramMatrix gram_matrix(const StateMatrix& rho) { return gram_matrix(char_poly(rho)); }

GramMatrix gram_matrix(const CharInvariants& inv) {
  GramMatrix g;
  g.n = inv.n;
  g.entries.resize(inv.n, inv.n);
  for (int i = 0; i < inv.n; ++i)
    for (int j = 0; j < inv.n; ++j) g.entries(i, j) = inv.p[i + j + 1];
  return g;
}

double gram_row_relation_residual(const GramMatrix& gram, const RMatrix& companion) {
  const int n = gram.n;
  // (p_{i+1},...,p_{n+i})^T = K^i (p_1,...,p_n)^T: K shifts the trace window
  RVector row = gram.entries.row(0);
  double worst = 0.0;
  const double scale = std::max(max_abs(gram.entries), 1e-300);
  for (int i = 1; i < n; ++i) {
    row = companion * row;
    worst = std::max(worst, (row.transpose() - gram.entries.row(i)).cwiseAbs().maxCoeff());
  }
  return worst / scale;
}

GenericityReport is_generic(const StateMatrix& rho, double tol_generic) {
  const detail::StateCore core = detail::StateCore::build(rho.entries());
  detail::DDLu lu(detail::gram_from_traces(core.p, core.n));
  return detail::genericity_from(lu.determinant(), core.p[1], core.n, tol_generic);
}

GenericityReport is_generic(const StateMatrix& rho) {
  return is_generic(rho, Tolerances::defaults().generic);
}

double cayley_hamilton_residual(const StateMatrix& rho, const CharInvariants& inv) {
  const int n = rho.dim();
  CMatrix acc = CMatrix::Identity(n, n);
  for (int m = 1; m <= n; ++m)
    acc = acc * rho.entries() + inv.k[m] * CMatrix::Identity(n, n);
  return max_abs(acc);
}

double newton_identity_residual(const CharInvariants& inv) {
  const int n = inv.n;
  const double p_inf = inv.p.tail(inv.p.size() - 1).cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (int m = 1; m <= 2 * n - 1; ++m) {
    double acc = m <= n ? m * inv.k[m] : 0.0;
    for (int r = 1; r <= m; ++r) {
      const int idx = m - r;
      if (r < inv.p.size() && idx <= n) acc += inv.p[r] * inv.k[idx];
    }
    worst = std::max(worst, std::abs(acc) / std::max(1.0, std::pow(p_inf, m)));
  }
  return worst;
}

}  // namespace bureskit
