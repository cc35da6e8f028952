#include <doctest.h>

#include "bureskit/sylvester.hpp"
#include "bureskit/random.hpp"
#include "support.hpp"

using namespace bureskit;
using testing::diag_state;

TEST_CASE("chi block upper: scalar case") {
  StateMatrix rho{diag_state({2.0})};
  CharInvariants inv = char_poly(rho);
  CMatrix y(1, 1);
  y << 3.0;
  CMatrix m = chi_block_upper(rho, y, inv);
  CHECK(m(0, 0).real() == doctest::Approx(3.0));  // k_0 Y
}

TEST_CASE("chi block upper: n = 2 frozen value from the block oracle") {
  StateMatrix rho{diag_state({1.0, 2.0})};
  CharInvariants inv = char_poly(rho);
  CMatrix y(2, 2);
  y << 0, 1, 1, 0;
  // frozen from the 2n x 2n power-sum evaluation of chi on [[-rho, Y],[0, rho]]:
  // M = Y rho - rho Y + k_1 Y = [[0, -2], [-4, 0]]
  CMatrix m = chi_block_upper(rho, y, inv);
  CHECK(m(0, 0).real() == doctest::Approx(0.0));
  CHECK(m(0, 1).real() == doctest::Approx(-2.0));
  CHECK(m(1, 0).real() == doctest::Approx(-4.0));
  CHECK(m(1, 1).real() == doctest::Approx(0.0));
  CMatrix oracle = testing::block_chi_upper_oracle(rho.entries(), rho.entries(), y, inv.k);
  CHECK(max_abs(CMatrix(m - oracle)) < 1e-13);
}

TEST_CASE("chi block upper: zero tangent gives zero") {
  StateMatrix rho{diag_state({1.0, 2.0, 3.0})};
  CharInvariants inv = char_poly(rho);
  CMatrix m = chi_block_upper(rho, CMatrix(CMatrix::Zero(3, 3)), inv);
  CHECK(max_abs(m) == 0.0);
}

TEST_CASE("chi block upper matches the 2n x 2n oracle on random input") {
  Xoshiro256ss rng(11);
  StateOptions opt;
  opt.spectrum_floor = 0.05;
  for (int n = 1; n <= 8; ++n) {
    StateMatrix rho = random_state(n, opt, rng);
    CharInvariants inv = char_poly(rho);
    CMatrix y = random_tangent_unit(n, rng).entries();
    CMatrix m = chi_block_upper(rho, y, inv);
    CMatrix oracle = testing::block_chi_upper_oracle(rho.entries(), rho.entries(), y, inv.k);
    CHECK(max_abs(CMatrix(m - oracle)) <= 1e-9 * std::max(1.0, max_abs(m)));
  }
}

TEST_CASE("chi block upper dimension mismatch") {
  StateMatrix rho{diag_state({1.0, 2.0})};
  CharInvariants inv = char_poly(rho);
  CHECK_THROWS_AS(chi_block_upper(rho, CMatrix(CMatrix::Zero(3, 3)), inv), ValidationError);
}

TEST_CASE("block-poly solve: hand cases") {
  // scalar: X = Y/(2 lambda)
  StateMatrix r1{diag_state({2.0})};
  CMatrix y1(1, 1);
  y1 << 3.0;
  SylvesterSolution s1 = solve_block_poly(r1, TangentMatrix(y1));
  CHECK(s1.x(0, 0).real() == doctest::Approx(0.75));

  // rho = I/2: rho X + X rho = X, so X = Y
  StateMatrix rhalf{CMatrix(0.5 * CMatrix::Identity(3, 3))};
  Xoshiro256ss rng(12);
  TangentMatrix y = random_tangent(3, rng);
  SylvesterSolution s2 = solve_block_poly(rhalf, y);
  CHECK(max_abs(CMatrix(s2.x - y.entries())) < 1e-12);

  // diagonal case: X_ij = Y_ij / (l_i + l_j)
  StateMatrix d{diag_state({1.0, 2.0})};
  CMatrix off(2, 2);
  off << 0, 1, 1, 0;
  SylvesterSolution s3 = solve_block_poly(d, TangentMatrix(off));
  CHECK(s3.x(0, 1).real() == doctest::Approx(1.0 / 3.0));
  CHECK(s3.x(1, 0).real() == doctest::Approx(1.0 / 3.0));
  CHECK(s3.x(0, 0).real() == doctest::Approx(0.0));
}

TEST_CASE("dense solve: hand cases agree with block-poly") {
  StateMatrix d{diag_state({1.0, 2.0})};
  CMatrix off(2, 2);
  off << 0, 1, 1, 0;
  SylvesterSolution dense = solve_dense(d, TangentMatrix(off));
  SylvesterSolution block = solve_block_poly(d, TangentMatrix(off));
  CHECK(max_abs(CMatrix(dense.x - block.x)) < 1e-10);

  // identity tangent on diag(1,2): X = diag(1/2, 1/4)
  SylvesterSolution sid = solve_dense(d, TangentMatrix(CMatrix(CMatrix::Identity(2, 2))));
  CHECK(sid.x(0, 0).real() == doctest::Approx(0.5));
  CHECK(sid.x(1, 1).real() == doctest::Approx(0.25));
}

TEST_CASE("solver properties on spectrum-[0.05,1] states") {
  Xoshiro256ss rng(13);
  for (int n = 1; n <= 8; ++n)
    for (int s = 0; s < 8; ++s) {
      RVector lam(n);
      for (int i = 0; i < n; ++i) lam[i] = 0.05 + 0.95 * rng.uniform01();
      Eigen::HouseholderQR<CMatrix> qr(ginibre(n, rng));
      CMatrix u = qr.householderQ();
      CMatrix rm = u * lam.asDiagonal().toDenseMatrix().cast<Complex>() * u.adjoint();
      StateMatrix rho{CMatrix((rm + rm.adjoint()) / 2.0)};
      TangentMatrix y = random_tangent_unit(n, rng);

      SylvesterSolution block = solve_block_poly(rho, y);
      SylvesterSolution dense = solve_dense(rho, y);
      const double yscale = max_abs(y.entries());
      CHECK(block.residual <= 1e-9 * yscale);
      CHECK(dense.residual <= 1e-9 * yscale);
      CHECK(block.asymmetry <= 1e-9 * std::max(max_abs(block.x), 1e-300));
      CHECK(herm_defect(block.x) == 0.0);  // symmetrized exactly
      const double xscale = std::max(max_abs(block.x), 1e-300);
      CHECK(max_abs(CMatrix(block.x - dense.x)) <= 1e-8 * xscale);
    }
}

TEST_CASE("linearity of the solver") {
  Xoshiro256ss rng(14);
  StateOptions opt;
  opt.spectrum_floor = 0.05;
  for (int n : {2, 4, 8}) {
    StateMatrix rho = random_state(n, opt, rng);
    TangentMatrix y1 = random_tangent_unit(n, rng);
    TangentMatrix y2 = random_tangent_unit(n, rng);
    const double a = 0.7, b = -1.3;
    CMatrix lhs = solve_block_poly(rho, TangentMatrix(a * y1.entries() + b * y2.entries())).x;
    CMatrix rhs = a * solve_block_poly(rho, y1).x + b * solve_block_poly(rho, y2).x;
    CHECK(max_abs(CMatrix(lhs - rhs)) <= 1e-9 * std::max(max_abs(lhs), 1e-300));
  }
}

TEST_CASE("bezout witness: q(rho) chi(-rho) = 1 for small n") {
  Xoshiro256ss rng(15);
  StateOptions opt;
  opt.spectrum_floor = 0.2;  // keep the double-precision euclid well conditioned
  for (int n : {1, 2, 3}) {
    StateMatrix rho = random_state(n, opt, rng);
    CharInvariants inv = char_poly(rho);
    testing::BezoutWitness w = testing::bezout_chi_witness(inv.k);
    REQUIRE(w.ok);
    CMatrix q_rho = testing::poly_eval_matrix(w.q, rho.entries());
    CMatrix chi_neg = detail::chi_eval(inv.k, CMatrix(-rho.entries()));
    CHECK(max_abs(CMatrix(q_rho * chi_neg - CMatrix::Identity(n, n))) < 1e-7);
  }
}

TEST_CASE("solution struct carries the method tag") {
  StateMatrix d{diag_state({1.0, 2.0})};
  CMatrix off(2, 2);
  off << 0, 1, 1, 0;
  CHECK(solve_block_poly(d, TangentMatrix(off)).method == SolveMethod::block_poly);
  CHECK(solve_dense(d, TangentMatrix(off)).method == SolveMethod::dense);
}
