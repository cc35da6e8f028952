#ifndef BURESKIT_DETAIL_COEFF_KERNELS_HPP
#define BURESKIT_DETAIL_COEFF_KERNELS_HPP

#include <vector>

#include "bureskit/detail/dd.hpp"

namespace bureskit::detail {

struct CoeffResult {
  RMat a;
  double condition = 0.0;
  double residual = 0.0;
};

CoeffResult coeff_companion_dd(const std::vector<DD>& k);
CoeffResult coeff_smith_dd(const std::vector<DD>& k);

RMat companion_dd(const std::vector<DD>& k);
RMat chi_eval_dd(const std::vector<DD>& k, const RMat& m);
RMat matrix_n_dd(const std::vector<DD>& k);

struct SmithCore {
  RMat h;
  DD det_h;
  std::vector<DD> phi;  // phi[1..n]
};

SmithCore smith_core_dd(const std::vector<DD>& k);

}  // namespace bureskit::detail

#endif
