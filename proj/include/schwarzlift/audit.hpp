#pragma once

#include <vector>

#include "schwarzlift/disk_mobius.hpp"
#include "schwarzlift/examples.hpp"
#include "schwarzlift/lift.hpp"
#include "schwarzlift/nehari.hpp"

namespace schwarzlift {

struct CutPointReport {
  double radius = 0.0;
  /// max | |(U, V)| - (c + 1/c) | along the lifted imaginary diameter.
  double circle_residual = 0.0;
  double max_abs_w = 0.0;
  /// max |2p - (|Sf| + e^{2 sigma}|K|)| along the diameter.
  double max_abs_margin = 0.0;
  /// max |kappa_e^2 - |K||, absolute and relative to |K|.
  double max_kappa_gap = 0.0;
  double max_kappa_rel = 0.0;
  SurfacePoint lift_plus_i;
  SurfacePoint lift_minus_i;
  bool pass = false;
};

/// Imaginary-diameter audit of catenoid_exp with t = 1: the lift lies on the
/// circle U^2 + V^2 = (c + 1/c)^2, W = 0, the criterion holds with equality
/// and the curve follows a principal direction. NotApplicable otherwise.
CutPointReport cut_point_circle_audit(const ExampleMap& ex, int n = 201, double ymax = 0.999);

struct HilleRoot {
  /// Root of F = 1 in the strip coordinate w = 2 artanh z, |Im w| < pi/2.
  cplx w{};
  /// tanh(w / 2); rounds onto the circle in double precision when |Re w| is large.
  cplx z{};
  /// 1 - |z| computed without cancellation.
  double boundary_gap = 0.0;
  double residual = 0.0;
};

struct HilleReport {
  double epsilon = 0.0;
  double c = 0.0;
  /// max (|Sf| + e^{2 sigma}|K|)(1 - |z|^2)^2 - 2 over the grid.
  double delta = 0.0;
  cplx delta_argmax{};
  double min_abs_F = 0.0;
  double max_abs_F = 0.0;
  std::vector<HilleRoot> roots;
};

/// delta over a polar grid of |z| <= rmax and the roots of F = 1 from
/// Newton iterations seeded across |Re w| <= 3 (2 pi / eps).
HilleReport hille_audit(double epsilon, double c, double rmax = 0.999, int nr = 120, int ntheta = 96);

struct TransferReport {
  DiskMobius transform;
  /// min over x of 2p(x) - (|SF(x)| + e^{2 tau(x)}|K|) for F = f o T.
  double min_margin = 0.0;
  double argmin = 0.0;
  /// min over x of (1 - x^2)^2 p(x) - (1 - |T(x)|^2)^2 p(|T(x)|).
  double min_trick_margin = 0.0;
};

/// The composed harmonic map f o T (h o T, g o T, q o T).
HarmonicMap compose_disk(const HarmonicMap& m, const DiskMobius& t);

/// Checks the transferred bound on (-xmax, xmax).
TransferReport mobius_transfer_check(const HarmonicMap& m, const NehariFunction& p, const DiskMobius& t, int n = 201,
                                     double xmax = 0.95);

/// Worst of (1 - |T(x)|^2)^2 p(|T(x)|) - (1 - x^2)^2 p(x) over the grid.
double nehari_trick_violation(const NehariFunction& p, const DiskMobius& t, int n = 201, double xmax = 0.99);

}  // namespace schwarzlift
