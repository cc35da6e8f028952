#include <doctest.h>

#include <cmath>

#include "bureskit/detail/dd.hpp"

using namespace bureskit::detail;

TEST_CASE("dd arithmetic keeps the low word") {
  // 1 + 2^-70 is not representable in double; dd must hold both words
  DD a(1.0);
  DD tiny(std::ldexp(1.0, -70));
  DD s = a + tiny;
  CHECK(s.hi == 1.0);
  CHECK(s.lo == std::ldexp(1.0, -70));
  DD back = s - a;
  CHECK(back.hi == std::ldexp(1.0, -70));
}

TEST_CASE("dd multiplication catches the rounding error of double") {
  // both factors are exact doubles whose product needs > 53 bits
  DD a(1.0 + std::ldexp(1.0, -30));
  DD b(1.0 - std::ldexp(1.0, -30));
  DD p = a * b;  // 1 - 2^-60 exactly
  DD expected = DD(1.0) - DD(std::ldexp(1.0, -60));
  CHECK(p.hi == expected.hi);
  CHECK(p.lo == expected.lo);
}

TEST_CASE("dd division round trips") {
  DD a(3.0), b(7.0);
  DD q = a / b;
  DD r = q * b - a;
  CHECK(std::abs(r.to_double()) < 1e-30);
}

TEST_CASE("compensated sum survives catastrophic double cancellation") {
  // sum_{i} (x_i) with pairs that cancel in double but not exactly
  DD acc;
  const double big = 1e16;
  for (int i = 0; i < 100; ++i) {
    acc += DD(big);
    acc += DD(1.0);
    acc -= DD(big);
  }
  CHECK(acc.to_double() == doctest::Approx(100.0).epsilon(1e-14));
}

TEST_CASE("dd LU solves an ill-conditioned Hilbert-like system") {
  const int n = 8;
  RMat h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = DD(1.0) / DD(double(i + j + 1));
  // rhs = H * ones, solution must come back as ones despite cond ~ 1e10
  std::vector<DD> rhs(n);
  for (int i = 0; i < n; ++i) {
    DD acc;
    for (int j = 0; j < n; ++j) acc += h(i, j);
    rhs[std::size_t(i)] = acc;
  }
  DDLu lu(h);
  CHECK(!lu.singular());
  std::vector<DD> x = lu.solve(rhs);
  for (int i = 0; i < n; ++i) CHECK(std::abs(x[std::size_t(i)].to_double() - 1.0) < 1e-18);
}

TEST_CASE("dd LU determinant of a known matrix") {
  RMat m(2, 2);
  m(0, 0) = DD(-3.0);
  m(0, 1) = DD(0.0);
  m(1, 0) = DD(1.0);
  m(1, 1) = DD(2.0);
  CHECK(DDLu(m).determinant().to_double() == -6.0);
}

TEST_CASE("complex dd trace product matches hand value") {
  CMat a(2, 2), b(2, 2);
  a(0, 0) = DDC(DD(1.0), DD(2.0));
  a(0, 1) = DDC(DD(0.0), DD(1.0));
  a(1, 0) = DDC(DD(3.0), DD(0.0));
  a(1, 1) = DDC(DD(-1.0), DD(0.5));
  b(0, 0) = DDC(DD(2.0), DD(0.0));
  b(0, 1) = DDC(DD(1.0), DD(-1.0));
  b(1, 0) = DDC(DD(0.0), DD(4.0));
  b(1, 1) = DDC(DD(5.0), DD(0.0));
  // Tr(AB) = sum_ij A_ij B_ji
  DDC t = trace_product(a, b);
  // hand: A00*B00 + A01*B10 + A10*B01 + A11*B11
  //     = (1+2i)*2 + (i)*(4i) + 3*(1-i) + (-1+0.5i)*5
  //     = (2+4i) + (-4) + (3-3i) + (-5+2.5i) = -4 + 3.5i
  CHECK(t.re.to_double() == doctest::Approx(-4.0));
  CHECK(t.im.to_double() == doctest::Approx(3.5));
}
