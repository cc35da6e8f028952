#include "bureskit/random.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace bureskit {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& s : s_) s = splitmix64(sm);
}

std::uint64_t Xoshiro256ss::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256ss::uniform01() { return double(next() >> 11) * 0x1.0p-53; }

Complex Xoshiro256ss::complex_normal() {
  // u1 in (0, 1] keeps the log finite
  const double u1 = (double(next() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform01();
  const double r = std::sqrt(-std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

CMatrix ginibre(int n, Xoshiro256ss& rng) {
  if (n < 1) throw ValidationError("ginibre: n must be >= 1");
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  return g;
}

namespace {

bool cholesky_ok(const CMatrix& m) {
  Eigen::LLT<CMatrix> llt(m);
  return llt.info() == Eigen::Success;
}

// certified lower bound on the smallest eigenvalue: largest probed t with
// chol(m - t I) still succeeding
double min_eig_lower_bound(const CMatrix& m) {
  const int n = int(m.rows());
  const double tr = m.trace().real();
  double lo = 0.0, hi = tr;
  if (!cholesky_ok(m)) lo = -tr;  // numerically semidefinite input
  if (!cholesky_ok(m - lo * CMatrix::Identity(n, n))) return lo;
  for (int it = 0; it < 80 && hi - lo > 1e-15 * std::max(1.0, tr); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cholesky_ok(m - mid * CMatrix::Identity(n, n)))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

StateMatrix random_state(int n, const StateOptions& opt, Xoshiro256ss& rng) {
  if (n < 1) throw ValidationError("random_state: n must be >= 1");
  const double f = opt.spectrum_floor;
  if (f < 0.0 || f >= 1.0)
    throw ValidationError("random_state: spectrum floor must lie in [0, 1)");
  if (opt.trace_one && f >= 1.0 / n)
    throw ValidationError("random_state: spectrum floor must be < 1/n with trace_one");

  CMatrix g = ginibre(n, rng);
  CMatrix rho = g * g.adjoint();
  rho = (rho + rho.adjoint().eval()) / 2.0;

  if (f > 0.0) {
    // want lambda_min + s >= f (tr + n s)/n; the bound below certifies it
    const double tr = rho.trace().real();
    const double bound = min_eig_lower_bound(rho);
    const double s = std::max(0.0, (f * tr / n - bound) / (1.0 - f));
    if (s > 0.0) rho += s * CMatrix::Identity(n, n);
  } else if (!cholesky_ok(rho)) {
    // numerically singular Ginibre draw; nudge into the interior
    rho += (1e-14 * rho.trace().real()) * CMatrix::Identity(n, n);
  }

  const double normalizer = opt.trace_one ? rho.trace().real()
                            : (opt.normalizer > 0.0 ? opt.normalizer : double(n));
  rho /= normalizer;
  return StateMatrix(rho);
}

TangentMatrix random_tangent(int n, Xoshiro256ss& rng) {
  CMatrix b = ginibre(n, rng);
  CMatrix y = (b + b.adjoint().eval()) / 2.0;
  return TangentMatrix(y);
}

TangentMatrix random_tangent_unit(int n, Xoshiro256ss& rng) {
  TangentMatrix y = random_tangent(n, rng);
  const double scale = max_abs(y.entries());
  return TangentMatrix(y.entries() / scale);
}

}  // namespace bureskit
