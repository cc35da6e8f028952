#ifndef BURESKIT_SELFTEST_HPP
#define BURESKIT_SELFTEST_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bureskit/tolerances.hpp"

namespace bureskit {

struct SelftestConfig {
  int n_max = 8;
  int samples = 1000;          // total random samples per property, spread over n
  std::uint64_t seed = 1;
  Tolerances tol = Tolerances::defaults();
};

struct PropertyResult {
  std::string name;
  double observed = 0.0;  // worst residual (or smallest value for lower bounds)
  double bound = 0.0;
  bool lower_bound = false;  // true: pass iff observed >= bound
  bool pass = false;
};

namespace selftest {

// invariants
PropertyResult newton_identity(const SelftestConfig&);
PropertyResult cayley_hamilton(const SelftestConfig&);
PropertyResult invariant_roundtrip(const SelftestConfig&);
PropertyResult gram_row_relation(const SelftestConfig&);
PropertyResult determinant_identities(const SelftestConfig&);
// coeffs
PropertyResult coeff_route_agreement(const SelftestConfig&);
PropertyResult coeff_sylvester_residual(const SelftestConfig&);
PropertyResult coeff_symmetry(const SelftestConfig&);
PropertyResult coeff_reconstruction(const SelftestConfig&);
// sylvester
PropertyResult sylvester_residual(const SelftestConfig&);
PropertyResult sylvester_hermiticity(const SelftestConfig&);
PropertyResult sylvester_linearity(const SelftestConfig&);
PropertyResult sylvester_equivalence(const SelftestConfig&);
// metric
PropertyResult metric_agreement(const SelftestConfig&);
PropertyResult metric_positivity(const SelftestConfig&);
PropertyResult metric_bilinearity(const SelftestConfig&);
PropertyResult golden_forms(const SelftestConfig&);
PropertyResult fixed_points(const SelftestConfig&);
PropertyResult projector_idempotence(const SelftestConfig&);
PropertyResult projector_orthogonality(const SelftestConfig&);
PropertyResult projector_form_agreement(const SelftestConfig&);
PropertyResult projector_parallel_part(const SelftestConfig&);
PropertyResult parallel_slice_identity(const SelftestConfig&);

}  // namespace selftest

/// Runs every property (with samples == 0: only the fixed golden cases).
/// Prints one line per property to log when given. Deterministic in seed.
std::vector<PropertyResult> run_selftest(const SelftestConfig& cfg, std::ostream* log = nullptr);

}  // namespace bureskit

#endif
