#include "bureskit/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "bureskit/detail/coeff_kernels.hpp"
#include "bureskit/detail/state_core.hpp"

namespace bureskit {

using detail::DD;
using detail::DDC;

const char* route_name(MetricRoute r) {
  switch (r) {
    case MetricRoute::prop1: return "prop1";
    case MetricRoute::prop2: return "prop2";
    case MetricRoute::prop4: return "prop4";
    case MetricRoute::eigen_oracle: return "oracle";
  }
  return "?";
}

struct StateContext::Impl {
  StateMatrix state;
  Tolerances tol;
  bool strict = false;

  detail::StateCore core;            // dd powers, p, k, e
  std::vector<CMatrix> powers;       // double mirrors, rho^0..rho^n
  CharInvariants invariants;
  RMatrix companion;
  CoeffMatrix coeff_companion_pub;
  detail::RMat a_companion_dd;
  GramMatrix gram;
  detail::RMat gram_inv_dd;          // only when generic
  RMatrix gram_inv;
  GenericityReport genericity;
  std::vector<std::string> warnings;

  // the Smith route runs only on demand (or in strict mode); call_once keeps
  // the lazily filled cache safe to share across threads
  mutable std::once_flag smith_flag;
  mutable CoeffMatrix coeff_smith_pub;
  mutable detail::RMat a_smith_dd;

  const CoeffMatrix& smith() const {
    std::call_once(smith_flag, [this] {
      detail::CoeffResult rs = detail::coeff_smith_dd(core.k);
      a_smith_dd = rs.a;
      coeff_smith_pub = {core.n,     detail::lower(rs.a),
                         CoeffRoute::smith,
                         rs.residual, rs.condition,
                         std::make_shared<const detail::RMat>(rs.a)};
    });
    return coeff_smith_pub;
  }

  explicit Impl(StateMatrix s, Tolerances t, bool strict_mode)
      : state(std::move(s)), tol(t), strict(strict_mode),
        core(detail::StateCore::build(state.entries())) {
    const int n = core.n;
    powers.reserve(std::size_t(n) + 1);
    for (int i = 0; i <= n; ++i) powers.push_back(detail::lower(core.powers[std::size_t(i)]));

    invariants.n = n;
    invariants.k.resize(n + 1);
    invariants.e.resize(n + 1);
    invariants.p.resize(2 * n);
    for (int i = 0; i <= n; ++i) {
      invariants.k[i] = core.k[std::size_t(i)].to_double();
      invariants.e[i] = core.e[std::size_t(i)].to_double();
    }
    for (int i = 0; i < 2 * n; ++i) invariants.p[i] = core.p[std::size_t(i)].to_double();

    companion = companion_matrix(invariants);

    detail::CoeffResult rc = detail::coeff_companion_dd(core.k);
    a_companion_dd = rc.a;
    coeff_companion_pub = {n,           detail::lower(rc.a),
                           CoeffRoute::companion,
                           rc.residual, rc.condition,
                           std::make_shared<const detail::RMat>(rc.a)};

    gram = gram_matrix(invariants);
    detail::DDLu gram_lu(detail::gram_from_traces(core.p, n));
    genericity = detail::genericity_from(gram_lu.determinant(), core.p[1], n, tol.generic);

    if (genericity.generic) {
      gram_inv_dd = gram_lu.solve(detail::RMat::identity(n));
      gram_inv = detail::lower(gram_inv_dd);
    }

    const double row_rel = gram_row_relation_residual(gram, companion);
    if (row_rel > tol.newton)
      warnings.push_back("gram row relation residual " + std::to_string(row_rel));

    if (strict && genericity.generic) {
      smith();
      double gap = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          gap = std::max(gap, std::abs((a_companion_dd(i, j) - a_smith_dd(i, j)).to_double()));
      const double rel = gap / std::max(max_abs(coeff_companion_pub.entries), 1e-300);
      if (rel > tol.xroute)
        throw ConditioningError("coefficient routes disagree beyond tolerance (relative gap " +
                                std::to_string(rel) + ")");
    }
  }
};

StateContext::StateContext(StateMatrix state, Tolerances tol, bool strict)
    : impl_(std::make_shared<const Impl>(std::move(state), tol, strict)) {}

int StateContext::dim() const { return impl_->core.n; }
const StateMatrix& StateContext::state() const { return impl_->state; }
const Tolerances& StateContext::tolerances() const { return impl_->tol; }
bool StateContext::strict() const { return impl_->strict; }

const CMatrix& StateContext::power(int i) const {
  if (i < 0 || i > dim()) throw ValidationError("power: exponent out of cached range");
  return impl_->powers[std::size_t(i)];
}

const CharInvariants& StateContext::invariants() const { return impl_->invariants; }
const RMatrix& StateContext::companion() const { return impl_->companion; }

const CoeffMatrix& StateContext::coeff(CoeffRoute route) const {
  return route == CoeffRoute::companion ? impl_->coeff_companion_pub : impl_->smith();
}

const GramMatrix& StateContext::gram() const { return impl_->gram; }
const GenericityReport& StateContext::genericity() const { return impl_->genericity; }
bool StateContext::generic() const { return impl_->genericity.generic; }

const RMatrix& StateContext::gram_inverse() const {
  if (!generic()) throw GenericityError("state is not generic");
  return impl_->gram_inv;
}

const std::vector<std::string>& StateContext::warnings() const { return impl_->warnings; }

namespace {

// imaginary residue of a nominally real scalar, flagged against scale
void note_imag(double imag, double scale, const Tolerances& tol, MetricReport& rep) {
  if (std::abs(imag) > tol.herm * std::max(1.0, scale))
    rep.warnings.push_back("imaginary residue " + std::to_string(imag));
}

// trace pairs T_ij = Tr(Y' rho^{i-1} Y rho^{j-1}) in compensated arithmetic
struct TracePairs {
  detail::DDMat<DDC> t;
};

TracePairs trace_pairs(const StateContext::Impl& im, const CMatrix& yprime, const CMatrix& y) {
  const int n = im.core.n;
  detail::CMat yp = detail::lift(yprime);
  detail::CMat yy = detail::lift(y);
  std::vector<detail::CMat> left(static_cast<std::size_t>(n));   // Y' rho^{i-1}
  std::vector<detail::CMat> right(static_cast<std::size_t>(n));  // Y rho^{j-1}
  for (int i = 0; i < n; ++i) {
    left[std::size_t(i)] = matmul(yp, im.core.powers[std::size_t(i)]);
    right[std::size_t(i)] = matmul(yy, im.core.powers[std::size_t(i)]);
  }
  TracePairs out;
  out.t = detail::DDMat<DDC>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.t(i, j) = trace_product(left[std::size_t(i)], right[std::size_t(j)]);
  return out;
}

// t_i = Tr(Y rho^{i-1}), i = 1..n
std::vector<DD> trace_moments(const StateContext::Impl& im, const CMatrix& y) {
  const int n = im.core.n;
  detail::CMat yl = detail::lift(y);
  std::vector<DD> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    t[std::size_t(i)] = trace_product(yl, im.core.powers[std::size_t(i)]).re;
  return t;
}

}  // namespace

MetricReport bures_prop1(const StateContext& ctx, const TangentMatrix& yprime,
                         const TangentMatrix& y) {
  require_same_dim(ctx.state(), yprime);
  require_same_dim(ctx.state(), y);
  const StateContext::Impl& im = ctx.impl();
  SylvesterSolution sol = detail::solve_block_poly_with(
      im.state.entries(), std::span<const CMatrix>(im.powers.data(), im.powers.size()),
      im.invariants.k, y.entries());
  const Complex tr = (yprime.entries() * sol.x).trace();
  MetricReport rep;
  rep.route = MetricRoute::prop1;
  rep.generic = ctx.generic();
  rep.value = 0.5 * tr.real();
  rep.sylvester_residual = sol.residual;
  note_imag(0.5 * tr.imag(), std::abs(rep.value), im.tol, rep);
  if (sol.residual > im.tol.solve * std::max(max_abs(y.entries()), 1e-300))
    rep.warnings.push_back("sylvester residual " + std::to_string(sol.residual));
  return rep;
}

MetricReport bures_prop2(const StateContext& ctx, const TangentMatrix& yprime,
                         const TangentMatrix& y, CoeffRoute route) {
  require_same_dim(ctx.state(), yprime);
  require_same_dim(ctx.state(), y);
  const StateContext::Impl& im = ctx.impl();
  const int n = ctx.dim();
  if (route == CoeffRoute::smith) im.smith();
  const detail::RMat& a =
      route == CoeffRoute::companion ? im.a_companion_dd : im.a_smith_dd;
  TracePairs tp = trace_pairs(im, yprime.entries(), y.entries());
  DDC acc;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      acc.re += a(i, j) * tp.t(i, j).re;
      acc.im += a(i, j) * tp.t(i, j).im;
    }
  MetricReport rep;
  rep.route = MetricRoute::prop2;
  rep.generic = ctx.generic();
  rep.value = 0.5 * acc.re.to_double();
  note_imag(0.5 * acc.im.to_double(), std::abs(rep.value), im.tol, rep);
  return rep;
}

MetricReport bures_prop4(const StateContext& ctx, const TangentMatrix& yprime,
                         const TangentMatrix& y) {
  require_same_dim(ctx.state(), yprime);
  require_same_dim(ctx.state(), y);
  if (!ctx.generic()) throw GenericityError("state is not generic");
  const StateContext::Impl& im = ctx.impl();
  const int n = ctx.dim();
  std::vector<DD> tp = trace_moments(im, yprime.entries());
  std::vector<DD> ty = trace_moments(im, y.entries());
  DD parallel;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      parallel += tp[std::size_t(i)] * im.gram_inv_dd(i, j) * ty[std::size_t(j)];
  parallel = parallel * DD(0.25);

  TracePairs pairs = trace_pairs(im, yprime.entries(), y.entries());
  DDC orth;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      DD w = DD(2.0) * im.a_companion_dd(i, j) - im.gram_inv_dd(i, j);
      orth.re += w * pairs.t(i, j).re;
      orth.im += w * pairs.t(i, j).im;
    }
  MetricReport rep;
  rep.route = MetricRoute::prop4;
  rep.generic = true;
  rep.parallel_part = parallel.to_double();
  rep.orthogonal_part = 0.25 * orth.re.to_double();
  rep.value = *rep.parallel_part + *rep.orthogonal_part;
  note_imag(0.25 * orth.im.to_double(), std::abs(rep.value), im.tol, rep);
  return rep;
}

MetricReport bures_eigen_oracle(const StateMatrix& rho, const TangentMatrix& yprime,
                                const TangentMatrix& y) {
  require_same_dim(rho, yprime);
  require_same_dim(rho, y);
  const int n = rho.dim();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.entries());
  const RVector lam = es.eigenvalues();
  const CMatrix u = es.eigenvectors();
  const CMatrix ypt = u.adjoint() * yprime.entries() * u;
  const CMatrix yt = u.adjoint() * y.entries() * u;
  Complex acc = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) acc += ypt(a, b) * yt(b, a) / (lam[a] + lam[b]);
  MetricReport rep;
  rep.route = MetricRoute::eigen_oracle;
  rep.generic = false;  // the oracle does not consult the genericity test
  rep.value = 0.5 * acc.real();
  note_imag(0.5 * acc.imag(), std::abs(rep.value), Tolerances::defaults(), rep);
  return rep;
}

MetricReport bures_eigen_oracle(const StateContext& ctx, const TangentMatrix& yprime,
                                const TangentMatrix& y) {
  MetricReport rep = bures_eigen_oracle(ctx.state(), yprime, y);
  rep.generic = ctx.generic();
  return rep;
}

RVector eigenvalues_oracle(const StateMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.entries(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

TangentSplit project_parallel(const StateContext& ctx, const TangentMatrix& y) {
  require_same_dim(ctx.state(), y);
  if (!ctx.generic()) throw GenericityError("state is not generic");
  const StateContext::Impl& im = ctx.impl();
  const int n = ctx.dim();
  std::vector<DD> ty = trace_moments(im, y.entries());
  std::vector<DD> c(static_cast<std::size_t>(n));  // c = P^{-1} t
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c[std::size_t(i)] += im.gram_inv_dd(i, j) * ty[std::size_t(j)];

  // first form: sum_i rho^i c_i (powers 1..n)
  detail::CMat par(n, n);
  for (int i = 0; i < n; ++i) {
    const detail::CMat& pw = im.core.powers[std::size_t(i + 1)];
    for (int r = 0; r < n; ++r)
      for (int cc = 0; cc < n; ++cc) {
        par(r, cc).re += c[std::size_t(i)] * pw(r, cc).re;
        par(r, cc).im += c[std::size_t(i)] * pw(r, cc).im;
      }
  }

  // second form: sum_ij (P^{-1})_ij rho^i Y rho^{j-1}
  detail::CMat ylift = detail::lift(y.entries());
  detail::CMat par2(n, n);
  for (int i = 0; i < n; ++i) {
    detail::CMat left = matmul(im.core.powers[std::size_t(i + 1)], ylift);
    for (int j = 0; j < n; ++j) {
      detail::CMat term = matmul(left, im.core.powers[std::size_t(j)]);
      DD w = im.gram_inv_dd(i, j);
      for (int r = 0; r < n; ++r)
        for (int cc = 0; cc < n; ++cc) {
          par2(r, cc).re += w * term(r, cc).re;
          par2(r, cc).im += w * term(r, cc).im;
        }
    }
  }

  CMatrix parallel = detail::lower(par);
  CMatrix second = detail::lower(par2);
  const double scale = std::max({max_abs(parallel), max_abs(y.entries()), 1e-300});
  const double gap = max_abs(CMatrix(parallel - second)) / scale;
  if (gap > im.tol.proj)
    throw ConditioningError("project_parallel: projector forms disagree (relative gap " +
                            std::to_string(gap) + ")");

  // computed parallel part is Hermitian up to rounding for Hermitian Y
  parallel = (parallel + parallel.adjoint().eval()) / 2.0;
  CMatrix orthogonal = y.entries() - parallel;

  TangentSplit split{TangentMatrix(parallel, im.tol), TangentMatrix(orthogonal, im.tol), gap};
  return split;
}

}  // namespace bureskit
