#pragma once

#include "schwarzlift/analytic.hpp"

namespace schwarzlift {

/// Disk automorphism z -> e^{i theta} (i rho - z) / (1 + i rho z). With
/// theta = 0 it is an involution preserving the imaginary axis.
struct DiskMobius {
  double rho = 0.0;
  double theta = 0.0;

  cplx apply(cplx z) const;
  cplx inverse(cplx w) const;
  /// Derivative of apply at z.
  cplx derivative(cplx z) const;
  AnalyticFn as_analytic() const;
};

struct GeodesicTransform {
  DiskMobius transform;
  double x1 = 0.0;
  double x2 = 0.0;
};

/// Automorphism carrying real points x1, x2 to z1, z2. Throws DegenerateInput
/// when |z1 - z2| < 1e-14 and DomainError when a point is outside the disk.
GeodesicTransform disk_mobius_geodesic(cplx z1, cplx z2);

}  // namespace schwarzlift
