#pragma once

#include <cstddef>
#include <vector>

#include "schwarzlift/harmonic.hpp"
#include "schwarzlift/quadrature.hpp"
#include "schwarzlift/space_mobius.hpp"

namespace schwarzlift {

struct SurfacePoint {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
  cplx source{};

  Vec3 vec() const { return {u, v, w}; }
};

/// W(z) = 2 Im of the integral of h'q from z0 to z. The straight segment is
/// tried first, then the detour through 0; PathError if both leave the domain.
double lift_height(const HarmonicMap& m, cplx z, const QuadratureOptions& opts = {});
/// Same integral along z0 -> via -> z.
double lift_height_via(const HarmonicMap& m, cplx via, cplx z, const QuadratureOptions& opts = {});

SurfacePoint lift_point(const HarmonicMap& m, cplx z, const QuadratureOptions& opts = {});

/// Derivatives of t -> lift(z + t d) at t = 0, exact from jets.
struct LiftDerivatives {
  Vec3 d1, d2, d3;
};

LiftDerivatives lift_derivatives(const HarmonicMap& m, cplx z, cplx d = 1.0);

/// Unit normal X_x x X_y / |X_x x X_y|. Throws ChartError where e^sigma = 0.
Vec3 surface_normal(const HarmonicMap& m, cplx z);

/// Ahlfors' S1 from the first three derivatives of a space curve.
double s1_from_derivatives(const Vec3& d1, const Vec3& d2, const Vec3& d3);

struct CurveSample {
  double x = 0.0;
  cplx source{};
  Vec3 point = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 normal = Vec3::Zero();
  double speed = 0.0;
};

/// Samples on a uniform parameter grid with spacing `step`.
struct LiftedCurve {
  std::vector<CurveSample> samples;
  std::vector<double> arclength;
  double step = 0.0;

  std::size_t size() const { return samples.size(); }
};

/// Lift of the segment x -> origin + x dir, x in [x0, x1], n samples.
LiftedCurve lift_line(const HarmonicMap& m, cplx origin, cplx dir, double x0, double x1, int n);

/// Curve from raw samples on a uniform grid; velocities by finite differences.
LiftedCurve curve_from_points(const std::vector<double>& xs, const std::vector<Vec3>& points);

/// 4th-order central differences of the sample points at `index`. Throws
/// BoundaryIndex unless 3 <= index <= size - 4.
LiftDerivatives curve_differences(const LiftedCurve& c, std::size_t index);

double ahlfors_s1_numeric(const LiftedCurve& c, std::size_t index);

/// |S1 - (S(s) + v^2 kappa^2 / 2)| with every term from finite differences;
/// S(s) is the Schwarzian of arclength.
double frenet_residual(const LiftedCurve& c, std::size_t index);

struct Lemma1Terms {
  double s1 = 0.0;
  double re_sf = 0.0;
  /// e^{2 sigma} |K|
  double k_term = 0.0;
  /// e^{2 sigma} kappa_e^2
  double ke_term = 0.0;
  double kappa2 = 0.0;
  double kappa_i = 0.0;
};

/// Right side of the S1 decomposition along the line through z in direction
/// dir (unit). Throws NegativeVariance if kappa^2 - kappa_i^2 < -1e-9.
Lemma1Terms ahlfors_s1_lemma1(const HarmonicMap& m, cplx z, cplx dir = 1.0);
inline Lemma1Terms ahlfors_s1_lemma1(const HarmonicMap& m, double x) {
  return ahlfors_s1_lemma1(m, cplx(x, 0.0), 1.0);
}

/// Pointwise image; velocities recomputed by finite differences, normals
/// pushed forward by the differential.
LiftedCurve apply_space_mobius(const SpaceMobius& t, const LiftedCurve& c);

/// Space Moebius map sending a curve with phi(0) = p, phi'(0) = v1,
/// phi''(0) = v2 to one with psi(0) = 0, psi'(0) = e1, psi''(0) = 0.
SpaceMobius normalize_second_order(const Vec3& p, const Vec3& v1, const Vec3& v2);

/// Frenet frame alignment, unit speed, then the special conformal map
/// with b = c e1, c = (1 + alpha) / 2, alpha = <psi''(0), e1>. The image
/// has log-speed derivative -1 at 0.
struct OmegaNormalizer {
  SpaceMobius map;
  double alpha = 0.0;
  double c = 0.0;
};
OmegaNormalizer normalize_log_speed(const Vec3& p, const Vec3& v1, const Vec3& v2);

}  // namespace schwarzlift
