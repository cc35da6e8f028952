#ifndef BURESKIT_METRIC_HPP
#define BURESKIT_METRIC_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bureskit/coeffs.hpp"
#include "bureskit/invariants.hpp"
#include "bureskit/sylvester.hpp"
#include "bureskit/types.hpp"

namespace bureskit {

enum class MetricRoute { prop1, prop2, prop4, eigen_oracle };

const char* route_name(MetricRoute r);

struct MetricReport {
  double value = 0.0;
  MetricRoute route = MetricRoute::prop1;
  bool generic = false;
  std::optional<double> parallel_part;     // prop4 only
  std::optional<double> orthogonal_part;   // prop4 only
  std::optional<double> sylvester_residual;  // prop1 only
  std::vector<std::string> warnings;
};

/// Decomposition of a tangent vector into the part commuting with rho and
/// its Bures-orthogonal complement.
struct TangentSplit {
  TangentMatrix parallel;
  TangentMatrix orthogonal;
  double form_agreement = 0.0;  // relative gap between the two projector forms
};

/// Immutable per-state cache: powers of rho, characteristic invariants, the
/// companion matrix, both coefficient routes, the Gram matrix and (when the
/// state is generic) its inverse. Construction does all the work; evaluation
/// against one context is safe from multiple threads.
class StateContext {
 public:
  explicit StateContext(StateMatrix state, Tolerances tol = Tolerances::defaults(),
                        bool strict = false);

  int dim() const;
  const StateMatrix& state() const;
  const Tolerances& tolerances() const;
  bool strict() const;

  const CMatrix& power(int i) const;  // rho^i, 0 <= i <= n
  const CharInvariants& invariants() const;
  const RMatrix& companion() const;
  const CoeffMatrix& coeff(CoeffRoute route = CoeffRoute::companion) const;
  const GramMatrix& gram() const;
  const GenericityReport& genericity() const;
  bool generic() const;
  const RMatrix& gram_inverse() const;  // throws GenericityError when not generic
  const std::vector<std::string>& warnings() const;

  struct Impl;
  const Impl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const Impl> impl_;
};

/// Chi-block route: g = 1/2 Tr(Y' X), X from the block-polynomial solve.
MetricReport bures_prop1(const StateContext& ctx, const TangentMatrix& yprime,
                         const TangentMatrix& y);

/// Coefficient route: g = 1/2 sum a_ij Tr(Y' rho^{i-1} Y rho^{j-1}).
MetricReport bures_prop2(const StateContext& ctx, const TangentMatrix& yprime,
                         const TangentMatrix& y, CoeffRoute route = CoeffRoute::companion);

/// Split route (generic states): the metric separated into the part
/// along commuting directions and its orthogonal complement,
/// g = 1/4 t'(Y') P^{-1} t(Y) + 1/4 sum (2a_ij - P^{-1}_ij) Tr(...).
MetricReport bures_prop4(const StateContext& ctx, const TangentMatrix& yprime,
                         const TangentMatrix& y);

/// Diagonalization reference: g = 1/2 sum <a|Y'|b><b|Y|a> / (l_a + l_b).
/// Test/diagnostic route; everything else avoids eigendecompositions. The
/// standalone form leaves the genericity flag false; the context form fills
/// it from the context.
MetricReport bures_eigen_oracle(const StateMatrix& rho, const TangentMatrix& yprime,
                                const TangentMatrix& y);
MetricReport bures_eigen_oracle(const StateContext& ctx, const TangentMatrix& yprime,
                                const TangentMatrix& y);

/// Eigenvalues of a state, ascending (diagnostic; used by identity checks).
RVector eigenvalues_oracle(const StateMatrix& rho);

/// Orthogonal projection onto the commutant directions,
/// P(Y) = sum rho^i (P^{-1})_ij Tr(Y rho^{j-1}), cross-checked against the
/// second form sum (P^{-1})_ij rho^i Y rho^{j-1}. Generic states only.
TangentSplit project_parallel(const StateContext& ctx, const TangentMatrix& y);

}  // namespace bureskit

#endif
