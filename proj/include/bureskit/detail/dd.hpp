#ifndef BURESKIT_DETAIL_DD_HPP
#define BURESKIT_DETAIL_DD_HPP

// Compensated (double-double) arithmetic for the invariant/coefficient
// machinery. The power-basis objects of this library (Hankel Gram matrix,
// companion solves, coefficient contractions) reach condition numbers around
// 1e12..1e16 by n = 8, so plain doubles lose every significant digit there.
// A double-double value keeps ~31 decimal digits, which restores ~15 digits
// in the results at roughly a 10x cost over plain doubles, paid only inside
// the affected kernels. Error-free transforms follow Dekker/Knuth; the FMA
// form of two_prod is used, so build with hardware FMA where available.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <utility>
#include <vector>

namespace bureskit::detail {

struct DD {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DD() = default;
  constexpr DD(double h) : hi(h) {}
  constexpr DD(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi; }
  explicit operator double() const { return hi; }
};

inline double dd_two_sum(double a, double b, double& err) {
  double s = a + b;
  double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
  return s;
}

// requires |a| >= |b|
inline double dd_quick_two_sum(double a, double b, double& err) {
  double s = a + b;
  err = b - (s - a);
  return s;
}

inline double dd_two_prod(double a, double b, double& err) {
  double p = a * b;
  err = std::fma(a, b, -p);
  return p;
}

inline DD operator+(DD a, DD b) {
  double s1, s2, t1, t2;
  s1 = dd_two_sum(a.hi, b.hi, s2);
  t1 = dd_two_sum(a.lo, b.lo, t2);
  s2 += t1;
  s1 = dd_quick_two_sum(s1, s2, s2);
  s2 += t2;
  s1 = dd_quick_two_sum(s1, s2, s2);
  return {s1, s2};
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b) {
  double p1, p2;
  p1 = dd_two_prod(a.hi, b.hi, p2);
  p2 += a.hi * b.lo + a.lo * b.hi;
  p1 = dd_quick_two_sum(p1, p2, p2);
  return {p1, p2};
}

inline DD operator/(DD a, DD b) {
  double q1 = a.hi / b.hi;
  DD r = a - b * DD(q1);
  double q2 = r.hi / b.hi;
  r = r - b * DD(q2);
  double q3 = r.hi / b.hi;
  double err;
  double s = dd_quick_two_sum(q1, q2, err);
  return DD(s, err) + DD(q3);
}

inline DD& operator+=(DD& a, DD b) { a = a + b; return a; }
inline DD& operator-=(DD& a, DD b) { a = a - b; return a; }
inline DD& operator*=(DD& a, DD b) { a = a * b; return a; }
inline DD& operator/=(DD& a, DD b) { a = a / b; return a; }

inline bool operator<(DD a, DD b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(DD a, DD b) { return b < a; }
inline bool operator==(DD a, DD b) { return a.hi == b.hi && a.lo == b.lo; }

inline DD dd_abs(DD a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

struct DDC {
  DD re, im;

  constexpr DDC() = default;
  constexpr DDC(DD r) : re(r) {}
  constexpr DDC(DD r, DD i) : re(r), im(i) {}
};

inline DDC operator+(DDC a, DDC b) { return {a.re + b.re, a.im + b.im}; }
inline DDC operator-(DDC a, DDC b) { return {a.re - b.re, a.im - b.im}; }
inline DDC operator*(DDC a, DDC b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline DDC& operator+=(DDC& a, DDC b) { a = a + b; return a; }
inline DDC conj(DDC a) { return {a.re, -a.im}; }

/// Row-major dense matrix over DD or DDC. Deliberately minimal: the library
/// only needs multiply, LU and a handful of reductions at n <= ~32.
template <class T>
class DDMat {
 public:
  DDMat() = default;
  DDMat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

  static DDMat identity(int n) {
    DDMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(DD(1.0));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using RMat = DDMat<DD>;
using CMat = DDMat<DDC>;

template <class T>
DDMat<T> matmul(const DDMat<T>& a, const DDMat<T>& b) {
  DDMat<T> c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int kk = 0; kk < a.cols(); ++kk) {
      const T& aik = a(i, kk);
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(kk, j);
    }
  return c;
}

template <class T>
DDMat<T> operator*(const DDMat<T>& a, const DDMat<T>& b) { return matmul(a, b); }

inline DDC trace(const CMat& a) {
  DDC t;
  for (int i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

/// Tr(A B) without forming the product.
inline DDC trace_product(const CMat& a, const CMat& b) {
  DDC t;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
  return t;
}

/// Partial-pivot LU of a real DD matrix. singular() reports an exactly zero
/// pivot; conditioning decisions are the caller's business.
class DDLu {
 public:
  explicit DDLu(RMat m) : lu_(std::move(m)), piv_(lu_.rows()), sign_(1) {
    const int n = lu_.rows();
    for (int j = 0; j < n; ++j) {
      double c = 0.0;
      for (int i = 0; i < n; ++i) c += std::abs(lu_(i, j).hi);
      norm_a_ = std::max(norm_a_, c);
    }
    for (int i = 0; i < n; ++i) piv_[i] = i;
    for (int col = 0; col < n; ++col) {
      int best = col;
      DD best_abs = dd_abs(lu_(col, col));
      for (int r = col + 1; r < n; ++r) {
        DD v = dd_abs(lu_(r, col));
        if (best_abs < v) { best = r; best_abs = v; }
      }
      if (best != col) {
        for (int j = 0; j < n; ++j) std::swap(lu_(col, j), lu_(best, j));
        std::swap(piv_[col], piv_[best]);
        sign_ = -sign_;
      }
      if (best_abs.hi == 0.0) { singular_ = true; continue; }
      for (int r = col + 1; r < n; ++r) {
        DD f = lu_(r, col) / lu_(col, col);
        lu_(r, col) = f;
        for (int j = col + 1; j < n; ++j) lu_(r, j) -= f * lu_(col, j);
      }
    }
  }

  bool singular() const { return singular_; }

  DD determinant() const {
    DD d{double(sign_)};
    for (int i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
    return d;
  }

  std::vector<DD> solve(const std::vector<DD>& rhs) const {
    const int n = lu_.rows();
    std::vector<DD> x(n);
    for (int i = 0; i < n; ++i) x[i] = rhs[piv_[i]];
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
      x[i] /= lu_(i, i);
    }
    return x;
  }

  RMat solve(const RMat& rhs) const {
    const int n = lu_.rows();
    RMat x(n, rhs.cols());
    std::vector<DD> col(n);
    for (int c = 0; c < rhs.cols(); ++c) {
      for (int i = 0; i < n; ++i) col[i] = rhs(i, c);
      std::vector<DD> sol = solve(col);
      for (int i = 0; i < n; ++i) x(i, c) = sol[i];
    }
    return x;
  }

  /// 1-norm condition estimate via the explicit inverse (n is small).
  double condition_estimate() const {
    if (singular_) return std::numeric_limits<double>::infinity();
    const int n = lu_.rows();
    RMat inv = solve(RMat::identity(n));
    double norm_inv = 0.0;
    for (int j = 0; j < n; ++j) {
      double c = 0.0;
      for (int i = 0; i < n; ++i) c += std::abs(inv(i, j).hi);
      norm_inv = std::max(norm_inv, c);
    }
    return norm_a_ * norm_inv;
  }

 private:
  RMat lu_;
  std::vector<int> piv_;
  int sign_;
  double norm_a_ = 0.0;
  bool singular_ = false;
};

}  // namespace bureskit::detail

#endif
