#ifndef BURESKIT_RANDOM_HPP
#define BURESKIT_RANDOM_HPP

#include <cstdint>

#include "bureskit/types.hpp"

namespace bureskit {

/// xoshiro256** (Blackman & Vigna), seeded through splitmix64. Chosen over
/// std::mt19937_64 so the stream is reproducible from documented constants
/// in any language.
class Xoshiro256ss {
 public:
  explicit Xoshiro256ss(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform in [0, 1), 53 mantissa bits.
  double uniform01();

  /// Standard complex normal, E|z|^2 = 1: sqrt(-ln u1) * exp(2 pi i u2).
  Complex complex_normal();

 private:
  std::uint64_t s_[4];
};

struct StateOptions {
  double spectrum_floor = 0.0;  // enforce min eigenvalue >= floor * Tr/n
  bool trace_one = false;
  double normalizer = 0.0;      // 0 selects the default, the dimension n
};

/// Square matrix of independent standard complex Gaussian entries.
CMatrix ginibre(int n, Xoshiro256ss& rng);

/// Ginibre-construction state: rho = (G G^* + shift) / normalizer. The shift
/// enforcing the spectrum floor is found by bisection with Cholesky probes;
/// no eigendecomposition anywhere.
StateMatrix random_state(int n, const StateOptions& opt, Xoshiro256ss& rng);

/// Random Hermitian matrix (B + B^*)/2, B Ginibre.
TangentMatrix random_tangent(int n, Xoshiro256ss& rng);

/// Same, rescaled to unit entrywise infinity norm.
TangentMatrix random_tangent_unit(int n, Xoshiro256ss& rng);

}  // namespace bureskit

#endif
