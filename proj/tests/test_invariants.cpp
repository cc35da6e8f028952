#include <doctest.h>

#include "bureskit/invariants.hpp"
#include "bureskit/metric.hpp"
#include "bureskit/random.hpp"
#include "support.hpp"

using namespace bureskit;
using testing::diag_state;

TEST_CASE("power traces of diagonal states") {
  StateMatrix rho{diag_state({1.0, 2.0})};
  RVector p = power_traces(rho, 3);
  CHECK(p[0] == doctest::Approx(3.0));
  CHECK(p[1] == doctest::Approx(5.0));
  CHECK(p[2] == doctest::Approx(9.0));

  StateMatrix rho3{diag_state({1.0, 2.0, 3.0})};
  RVector p3 = power_traces(rho3, 3);
  CHECK(p3[0] == doctest::Approx(6.0));
  CHECK(p3[1] == doctest::Approx(14.0));
  CHECK(p3[2] == doctest::Approx(36.0));
}

TEST_CASE("power traces of the identity are all n") {
  for (int n : {1, 2, 5}) {
    StateMatrix rho{CMatrix(CMatrix::Identity(n, n))};
    RVector p = power_traces(rho, 4);
    for (int i = 0; i < 4; ++i) CHECK(p[i] == doctest::Approx(double(n)));
  }
}

TEST_CASE("power traces rejects bad m_max") {
  StateMatrix rho{diag_state({1.0, 2.0})};
  CHECK_THROWS_AS(power_traces(rho, 0), ValidationError);
}

TEST_CASE("state validation rejects bad input") {
  CMatrix bad(2, 2);
  bad << Complex(1, 0), Complex(0.5, 0.2), Complex(0.5, 0.3), Complex(2, 0);
  CHECK_THROWS_AS(StateMatrix{bad}, ValidationError);

  CMatrix indef(2, 2);
  indef << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-2, 0);
  CHECK_THROWS_AS(StateMatrix{indef}, ValidationError);

  CMatrix rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(StateMatrix{rect}, ValidationError);
}

TEST_CASE("characteristic coefficients of small diagonal states") {
  CharInvariants inv = char_poly(StateMatrix{diag_state({1.0, 2.0})});
  CHECK(inv.k[0] == doctest::Approx(1.0));
  CHECK(inv.k[1] == doctest::Approx(-3.0));
  CHECK(inv.k[2] == doctest::Approx(2.0));
  CHECK(inv.e[1] == doctest::Approx(3.0));
  CHECK(inv.e[2] == doctest::Approx(2.0));

  CharInvariants id2 = char_poly(StateMatrix{CMatrix(CMatrix::Identity(2, 2))});
  CHECK(id2.k[0] == doctest::Approx(1.0));
  CHECK(id2.k[1] == doctest::Approx(-2.0));
  CHECK(id2.k[2] == doctest::Approx(1.0));

  CharInvariants d3 = char_poly(StateMatrix{diag_state({1.0, 2.0, 3.0})});
  CHECK(d3.k[1] == doctest::Approx(-6.0));
  CHECK(d3.k[2] == doctest::Approx(11.0));
  CHECK(d3.k[3] == doctest::Approx(-6.0));
}

TEST_CASE("k_n carries the determinant sign") {
  // k_n = (-1)^n det(rho)
  CharInvariants inv = char_poly(StateMatrix{diag_state({0.5, 1.5, 2.0})});
  CHECK(inv.k[3] == doctest::Approx(-0.5 * 1.5 * 2.0));
}

TEST_CASE("e_from_p and p_from_e on hand values") {
  RVector p(2);
  p << 3.0, 5.0;
  RVector e = e_from_p(p);
  CHECK(e[0] == doctest::Approx(3.0));
  CHECK(e[1] == doctest::Approx(2.0));  // (p1^2 - p2)/2

  RVector e2(2);
  e2 << 3.0, 2.0;
  RVector pe = p_from_e(e2, 3);
  CHECK(pe[0] == doctest::Approx(3.0));
  CHECK(pe[1] == doctest::Approx(5.0));
  CHECK(pe[2] == doctest::Approx(9.0));  // e1 p2 - e2 p1

  // n = 1, e = (1): p_m = 1 for every m
  RVector e1(1);
  e1 << 1.0;
  RVector p1 = p_from_e(e1, 5);
  for (int i = 0; i < 5; ++i) CHECK(p1[i] == doctest::Approx(1.0));
}

TEST_CASE("conversion determinant forms agree with the recursion") {
  RVector p(3);
  p << 6.0, 14.0, 36.0;  // diag(1,2,3)
  RVector e = e_from_p(p);
  for (int i = 1; i <= 3; ++i)
    CHECK(e_from_p_determinant(p, i) == doctest::Approx(e[i - 1]).epsilon(1e-12));
  RVector pback = p_from_e(e, 3);
  for (int i = 1; i <= 3; ++i)
    CHECK(p_from_e_determinant(e, i) == doctest::Approx(pback[i - 1]).epsilon(1e-12));
}

TEST_CASE("conversion input validation") {
  CHECK_THROWS_AS(e_from_p(RVector()), ValidationError);
  RVector e(2);
  e << 1.0, 0.5;
  CHECK_THROWS_AS(p_from_e(e, 0), ValidationError);
  CHECK_THROWS_AS(e_from_p_determinant(e, 3), ValidationError);
}

TEST_CASE("gram matrix of diag(1,2) and its determinant identity") {
  GramMatrix g = gram_matrix(StateMatrix{diag_state({1.0, 2.0})});
  CHECK(g.entries(0, 0) == doctest::Approx(3.0));
  CHECK(g.entries(0, 1) == doctest::Approx(5.0));
  CHECK(g.entries(1, 0) == doctest::Approx(5.0));
  CHECK(g.entries(1, 1) == doctest::Approx(9.0));
  // det P = det(rho) * (l1 - l2)^2 = 2 * 1
  CHECK(g.entries.determinant() == doctest::Approx(2.0));
}

TEST_CASE("gram matrix of the maximally mixed state is singular") {
  GramMatrix g = gram_matrix(StateMatrix{CMatrix(0.5 * CMatrix::Identity(2, 2))});
  CHECK(g.entries(0, 0) == doctest::Approx(1.0));
  CHECK(g.entries(0, 1) == doctest::Approx(0.5));
  CHECK(g.entries(1, 1) == doctest::Approx(0.25));
  CHECK(g.entries.determinant() == doctest::Approx(0.0));
}

TEST_CASE("genericity verdicts on reference spectra") {
  CHECK(is_generic(StateMatrix{diag_state({1.0, 2.0})}).generic);
  CHECK_FALSE(is_generic(StateMatrix{CMatrix(0.5 * CMatrix::Identity(2, 2))}).generic);
  CHECK_FALSE(is_generic(StateMatrix{diag_state({1.0, 1.0, 2.0})}).generic);

  GenericityReport rep = is_generic(StateMatrix{diag_state({1.0, 2.0})});
  CHECK(rep.det_p == doctest::Approx(2.0));
  CHECK(rep.normalized > rep.threshold);
}

TEST_CASE("genericity decision is scale invariant above the absolute floor") {
  for (double c : {1.0, 42.0, 1e6}) {
    GenericityReport rep = is_generic(StateMatrix{CMatrix(c * diag_state({1.0, 2.0, 3.5}))});
    CHECK(rep.generic);
  }
}

TEST_CASE("newton and cayley-hamilton residuals on random states") {
  Xoshiro256ss rng(99);
  StateOptions opt;
  opt.spectrum_floor = 0.05;
  for (int n = 1; n <= 8; ++n)
    for (int s = 0; s < 25; ++s) {
      StateMatrix rho = random_state(n, opt, rng);
      CharInvariants inv = char_poly(rho);
      CHECK(newton_identity_residual(inv) <= 1e-9);
      const double scale = std::pow(max_abs(rho.entries()), n);
      CHECK(cayley_hamilton_residual(rho, inv) <= 1e-9 * scale);
    }
}

TEST_CASE("gram rows satisfy the companion shift relation") {
  Xoshiro256ss rng(100);
  StateOptions opt;
  opt.spectrum_floor = 0.05;
  for (int n = 2; n <= 8; ++n) {
    CharInvariants inv = char_poly(random_state(n, opt, rng));
    CHECK(gram_row_relation_residual(gram_matrix(inv), companion_matrix(inv)) <= 1e-9);
  }
}

TEST_CASE("gram matrix is positive definite exactly when the state is generic") {
  Xoshiro256ss rng(102);
  StateOptions opt;
  opt.spectrum_floor = 0.05;
  for (int n = 2; n <= 6; ++n) {
    StateMatrix rho = random_state(n, opt, rng);
    GramMatrix g = gram_matrix(rho);
    Eigen::LLT<RMatrix> llt(g.entries);
    if (is_generic(rho).generic) CHECK(llt.info() == Eigen::Success);
  }
  // repeated spectrum: P is singular, the Cholesky must fail
  GramMatrix g = gram_matrix(StateMatrix{diag_state({1.0, 1.0, 2.0})});
  Eigen::LLT<RMatrix> llt(g.entries);
  CHECK(llt.info() != Eigen::Success);
}

TEST_CASE("det P matches the spectral product on random states") {
  Xoshiro256ss rng(101);
  StateOptions opt;
  opt.spectrum_floor = 0.05;
  for (int n = 2; n <= 6; ++n) {
    StateMatrix rho = random_state(n, opt, rng);
    StateContext ctx(rho);
    RVector lam = eigenvalues_oracle(rho);
    double expected = 1.0;
    for (int i = 0; i < n; ++i) expected *= lam[i];
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) expected *= (lam[i] - lam[j]) * (lam[i] - lam[j]);
    CHECK(ctx.genericity().det_p == doctest::Approx(expected).epsilon(1e-8));
  }
}
