#ifndef BURESKIT_TESTS_SUPPORT_HPP
#define BURESKIT_TESTS_SUPPORT_HPP

// Test-only oracles. Everything here is allowed to diagonalize, run the
// 2n x 2n block construction, or do other things the production path avoids;
// tests compare the library against these independent routes.

#include <vector>

#include "bureskit/invariants.hpp"
#include "bureskit/random.hpp"
#include "bureskit/types.hpp"

namespace bureskit::testing {

inline CMatrix diag_state(std::initializer_list<double> diag) {
  const int n = int(diag.size());
  CMatrix m = CMatrix::Zero(n, n);
  int i = 0;
  for (double v : diag) m(i, i) = v, ++i;
  return m;
}

/// chi evaluated on the 2n x 2n block matrix [[-a, y], [0, b]] by an explicit
/// power sum (not Horner, to stay independent of the production evaluation);
/// returns the upper-right block.
inline CMatrix block_chi_upper_oracle(const CMatrix& a, const CMatrix& b, const CMatrix& y,
                                      const RVector& k) {
  const int n = int(k.size()) - 1;
  const int dim = int(a.rows());
  CMatrix z = CMatrix::Zero(2 * dim, 2 * dim);
  z.topLeftCorner(dim, dim) = -a;
  z.topRightCorner(dim, dim) = y;
  z.bottomRightCorner(dim, dim) = b;
  CMatrix acc = k[n] * CMatrix::Identity(2 * dim, 2 * dim);
  CMatrix zp = CMatrix::Identity(2 * dim, 2 * dim);
  for (int m = 1; m <= n; ++m) {
    zp = zp * z;
    acc += k[n - m] * zp;
  }
  return acc.topRightCorner(dim, dim);
}

/// prop1 trace form evaluated literally on 2n x 2n blocks:
/// g = -1/2 Tr( [[0,0],[Y',0]] [[chi(-rho)^{-1},0],[0,0]] chi([[-rho,Y],[0,rho]]) ).
inline double prop1_block_trace_oracle(const CMatrix& rho, const CMatrix& yprime,
                                       const CMatrix& y, const RVector& k) {
  const int n = int(rho.rows());
  const int nn = 2 * n;
  CMatrix z = CMatrix::Zero(nn, nn);
  z.topLeftCorner(n, n) = -rho;
  z.topRightCorner(n, n) = y;
  z.bottomRightCorner(n, n) = rho;
  CMatrix chi_z = k[int(k.size()) - 1] * CMatrix::Identity(nn, nn);
  CMatrix zp = CMatrix::Identity(nn, nn);
  for (int m = 1; m < int(k.size()); ++m) {
    zp = zp * z;
    chi_z += k[int(k.size()) - 1 - m] * zp;
  }
  CMatrix chi_neg = CMatrix::Zero(n, n);
  {
    CMatrix acc = CMatrix::Identity(n, n);
    for (int m = 1; m < int(k.size()); ++m)
      acc = (-rho) * acc + k[m] * CMatrix::Identity(n, n);
    chi_neg = acc;
  }
  CMatrix left = CMatrix::Zero(nn, nn);
  left.bottomLeftCorner(n, n) = yprime;
  CMatrix mid = CMatrix::Zero(nn, nn);
  mid.topLeftCorner(n, n) = chi_neg.partialPivLu().inverse();
  return -0.5 * (left * mid * chi_z).trace().real();
}

/// Bezout witness for the invertibility argument: polynomials q with
/// q(t) chi(-t) = 1 mod chi(t), so q(rho) chi(-rho) = 1. Found by the
/// extended Euclidean algorithm over double-coefficient polynomials
/// (well-conditioned only for small n; that is all the tests need).
/// Polynomials are coefficient vectors, lowest degree first.
struct BezoutWitness {
  std::vector<double> q;
  bool ok = false;
};

inline std::vector<double> poly_trim(std::vector<double> a) {
  while (a.size() > 1 && std::abs(a.back()) < 1e-13) a.pop_back();
  return a;
}

inline std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

inline std::vector<double> poly_sub(std::vector<double> a, const std::vector<double>& b) {
  if (b.size() > a.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

inline void poly_divmod(const std::vector<double>& num, const std::vector<double>& den,
                        std::vector<double>& quot, std::vector<double>& rem) {
  rem = num;
  quot.assign(1, 0.0);
  if (rem.size() >= den.size()) quot.assign(rem.size() - den.size() + 1, 0.0);
  while (rem.size() >= den.size() && !(rem.size() == 1 && rem[0] == 0.0)) {
    const std::size_t shift = rem.size() - den.size();
    const double factor = rem.back() / den.back();
    quot[shift] = factor;
    std::vector<double> scaled(shift, 0.0);
    for (double c : den) scaled.push_back(c * factor);
    rem = poly_trim(poly_sub(rem, scaled));
    if (rem.size() == 1 && std::abs(rem[0]) < 1e-12) break;
    if (rem.size() >= den.size() && std::abs(rem.back()) < 1e-300) break;
  }
}

/// extended gcd of chi(t) and chi(-t); returns q with p chi + q chi_neg = g,
/// normalized so g = 1 (they are coprime for positive rho).
inline BezoutWitness bezout_chi_witness(const RVector& k) {
  const int n = int(k.size()) - 1;
  // chi coefficients lowest-first: chi(t) = k_n + k_{n-1} t + ... + t^n
  std::vector<double> chi(std::size_t(n) + 1), chi_neg(std::size_t(n) + 1);
  for (int m = 0; m <= n; ++m) {
    chi[std::size_t(m)] = k[n - m];
    chi_neg[std::size_t(m)] = (m % 2 ? -k[n - m] : k[n - m]);
  }
  // euclid with bezout tracking on (r0, r1) = (chi, chi_neg); when r1 hits
  // the zero polynomial, r0 holds the gcd and t0 its chi_neg coefficient
  std::vector<double> r0 = chi, r1 = chi_neg;
  std::vector<double> t0{0.0}, t1{1.0};
  for (int it = 0; it < 64 && !(r1.size() == 1 && std::abs(r1[0]) < 1e-10); ++it) {
    std::vector<double> q, rem;
    poly_divmod(r0, r1, q, rem);
    std::vector<double> t2 = poly_trim(poly_sub(t0, poly_mul(q, t1)));
    r0 = r1;
    r1 = poly_trim(rem);
    t0 = t1;
    t1 = t2;
  }
  BezoutWitness w;
  if (r0.size() == 1 && std::abs(r0[0]) > 1e-10) {
    for (double c : t0) w.q.push_back(c / r0[0]);
    w.ok = true;
  }
  return w;
}

inline CMatrix poly_eval_matrix(const std::vector<double>& coeffs, const CMatrix& m) {
  const int n = int(m.rows());
  CMatrix acc = CMatrix::Zero(n, n);
  CMatrix mp = CMatrix::Identity(n, n);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    acc += coeffs[i] * mp;
    mp = mp * m;
  }
  return acc;
}

}  // namespace bureskit::testing

#endif
