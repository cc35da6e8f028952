#ifndef BURESKIT_TOLERANCES_HPP
#define BURESKIT_TOLERANCES_HPP

namespace bureskit {

/// Numerical tolerances used across the library. All of them are multiplied
/// by the BURESKIT_TOLERANCE_SCALE environment variable (default 1) when
/// obtained through defaults().
struct Tolerances {
  double herm = 1e-10;     // hermiticity slack, relative to the max entry
  double newton = 1e-9;    // Newton-identity residuals
  double generic = 1e-10;  // genericity threshold on the normalized det P
  double coeff = 1e-9;     // Sylvester residual of the coefficient matrix A
  double xroute = 1e-8;    // cross-route agreement
  double solve = 1e-9;     // Sylvester solver residuals
  double proj = 1e-10;     // projector diagnostics

  Tolerances scaled_by(double factor) const {
    Tolerances t = *this;
    t.herm *= factor;
    t.newton *= factor;
    t.generic *= factor;
    t.coeff *= factor;
    t.xroute *= factor;
    t.solve *= factor;
    t.proj *= factor;
    return t;
  }

  /// Built-in values scaled by BURESKIT_TOLERANCE_SCALE (read once).
  static const Tolerances& defaults();
};

}  // namespace bureskit

#endif
