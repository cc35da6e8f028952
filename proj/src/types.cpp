#include "bureskit/types.hpp"

#include <cstdlib>
#include <string>

namespace bureskit {

const Tolerances& Tolerances::defaults() {
  static Tolerances scaled = [] {
    Tolerances t;
    if (const char* env = std::getenv("BURESKIT_TOLERANCE_SCALE")) {
      char* end = nullptr;
      double f = std::strtod(env, &end);
      if (end != env && f > 0.0) t = t.scaled_by(f);
    }
    return t;
  }();
  return scaled;
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const RMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double herm_defect(const CMatrix& m) { return max_abs(CMatrix(m - m.adjoint())); }

namespace {

void check_square(const CMatrix& m, const char* what) {
  if (m.rows() < 1 || m.rows() != m.cols())
    throw ValidationError(std::string(what) + ": expected a square matrix of dimension >= 1, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

void check_hermitian(const CMatrix& m, const Tolerances& tol, const char* what) {
  const double scale = std::max(max_abs(m), 1e-300);
  const double defect = herm_defect(m);
  if (defect > tol.herm * scale)
    throw ValidationError(std::string(what) + ": not Hermitian, defect " + std::to_string(defect) +
                          " exceeds " + std::to_string(tol.herm * scale));
}

}  // namespace

StateMatrix::StateMatrix(CMatrix entries, const Tolerances& tol) : entries_(std::move(entries)) {
  check_square(entries_, "state");
  check_hermitian(entries_, tol, "state");
  Eigen::LLT<CMatrix> llt(entries_);
  if (llt.info() != Eigen::Success)
    throw ValidationError("state: not positive definite (Cholesky pivot <= 0)");
}

TangentMatrix::TangentMatrix(CMatrix entries, const Tolerances& tol) : entries_(std::move(entries)) {
  check_square(entries_, "tangent");
  check_hermitian(entries_, tol, "tangent");
}

void require_same_dim(const StateMatrix& a, const TangentMatrix& b) {
  if (a.dim() != b.dim())
    throw ValidationError("dimension mismatch: state is " + std::to_string(a.dim()) +
                          ", tangent is " + std::to_string(b.dim()));
}

}  // namespace bureskit
