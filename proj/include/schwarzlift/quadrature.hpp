#pragma once

#include <functional>

#include "schwarzlift/jets.hpp"

namespace schwarzlift {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-13;
  int max_subdivisions = 1 << 12;
};

struct QuadratureResult {
  cplx value{};
  double error_estimate = 0.0;
  int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integral of `f` over the real interval
/// [a, b]. The integrand may be complex valued. Throws QuadratureError when
/// the tolerance cannot be met within the subdivision budget.
QuadratureResult integrate_gk(const std::function<cplx(double)>& f, double a, double b,
                              const QuadratureOptions& opts = {});

/// Contour integral of the analytic integrand along the straight segment
/// from `from` to `to`.
QuadratureResult integrate_segment(const std::function<cplx(cplx)>& f, cplx from, cplx to,
                                   const QuadratureOptions& opts = {});

}  // namespace schwarzlift
