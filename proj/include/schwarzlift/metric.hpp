#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "schwarzlift/harmonic.hpp"
#include "schwarzlift/lift.hpp"
#include "schwarzlift/nehari.hpp"

namespace schwarzlift {

/// Symmetric traceless [[a, -b], [-b, -a]], identified with a + bi.
struct TracelessTensor {
  double a = 0.0;
  double b = 0.0;

  cplx complex() const { return {a, b}; }
  double norm() const { return std::hypot(a, b); }
  Eigen::Matrix2d matrix() const {
    Eigen::Matrix2d m;
    m << a, -b, -b, -a;
    return m;
  }
  static TracelessTensor from_complex(cplx c) { return {c.real(), c.imag()}; }
  static TracelessTensor from_matrix(const Eigen::Matrix2d& m);
};

/// Real partial derivatives of a real function, recovered from its complex
/// jet (value, psi_z, psi_zz, Laplacian).
struct RealPartials {
  double x = 0.0, y = 0.0, xx = 0.0, yy = 0.0, xy = 0.0;
};
RealPartials real_partials(const SigmaJet& psi);

/// Euclidean-frame tensor 2 (psi_zz - psi_z^2).
TracelessTensor schwarzian_tensor(const SigmaJet& psi);
/// Same tensor assembled as the traceless part of Hess psi - dpsi (x) dpsi
/// from real partials.
TracelessTensor schwarzian_tensor_matrix(const SigmaJet& psi);

/// Tensor of psi for the metric e^{2 phi} |dz|^2, as the traceless part of
/// Hess psi - dphi (x) dpsi - dpsi (x) dphi - dpsi (x) dpsi in the Euclidean
/// frame.
TracelessTensor schwarzian_tensor_conformal(const SigmaJet& psi, const SigmaJet& phi);

/// |B_hat(sigma - phi) - (B(sigma) - B(phi))| with B_hat for e^{2 phi} |dz|^2.
double subtraction_residual(const SigmaJet& sigma, const SigmaJet& phi);

/// Difference of two real-function jets.
SigmaJet jet_difference(const SigmaJet& a, const SigmaJet& b);

/// The radial metric Phi'(|z|)^2 |dz|^2 of an extremal profile.
class RadialMetric {
 public:
  explicit RadialMetric(std::shared_ptr<const ExtremalProfile> profile) : profile_(std::move(profile)) {}
  static RadialMetric solve(const NehariFunction& p, double rmax = 1.0 - 1e-4, int n = 4001);

  const ExtremalProfile& profile() const { return *profile_; }
  double p(double r) const { return profile_->nehari()(r); }
  double rmax() const { return profile_->rmax(); }

  /// Jet of phi = log Phi'(|z|). Throws OutOfRange past rmax.
  SigmaJet jet(cplx z) const;
  /// 2 Phi'^-2 (A + p).
  double abs_curvature(double r) const { return profile_->abs_curvature(r); }
  /// A + p > 0 on the profile grid.
  bool negatively_curved() const;

 private:
  std::shared_ptr<const ExtremalProfile> profile_;
};

struct Lemma2Terms {
  /// (1/2)|K_g| - LHS, in g-units.
  double margin = 0.0;
  /// |B_g(sigma - phi)|_g
  double tensor_norm = 0.0;
  /// e^{2(sigma - phi)} |K|
  double curvature_term = 0.0;
  double half_kg = 0.0;
};

/// Margin in the radial metric through |zeta^2 Sf + A - p|.
Lemma2Terms lemma2_margin(const HarmonicMap& m, const RadialMetric& g, cplx z);
/// Same quantity with B_g(sigma - phi) assembled from real partials.
Lemma2Terms lemma2_margin_tensor(const HarmonicMap& m, const RadialMetric& g, cplx z);

/// sqrt(Phi'(|z|) / e^sigma).
double u_function(const HarmonicMap& m, const RadialMetric& g, cplx z);

struct ConvexityReport {
  std::string check;
  double theta = 0.0;
  int n = 0;
  std::vector<double> s;
  std::vector<double> values;
  /// Pointwise margins of the tested inequality.
  std::vector<double> margins;
  double min_margin = 0.0;
  double argmin = 0.0;
  /// Same margin with |K| scaled by e^{2(sigma - phi)}; diagnostic only.
  double min_margin_scaled = 0.0;
  double derivative_at_zero = 0.0;
  double scale = 0.0;
  bool pass = false;
};

/// Hess_g(u)(e, e) - u^-3 |K| / 4 on the g-unit radial vector e along the
/// diameter at angle theta, |z| <= r_end, d^2u/ds^2 by 4th-order differences
/// in arclength s = Phi(r). Pass when min >= -1e-6.
ConvexityReport radial_hessian_check(const HarmonicMap& m, const RadialMetric& g, double theta, int n = 401,
                                     double r_end = 0.95);

/// omega(s) = sqrt(Phi'(r(s)) / e^{tau(r(s))}), e^tau the speed of T o lift
/// along the diameter. Pass when second differences >= -1e-6 max|omega|.
/// derivative_at_zero holds omega'(0).
ConvexityReport omega_profile(const HarmonicMap& m, const SpaceMobius& t, const RadialMetric& g, double theta,
                              int n = 401, double r_end = 0.95);

/// log-speed tau of T o lift along the diameter at angle theta, and its
/// s-derivative at 0 by central differences.
double log_speed_derivative_at_zero(const HarmonicMap& m, const SpaceMobius& t, const RadialMetric& g,
                                    double theta, double h = 1e-4);

/// The space Moebius map normalizing the lifted diameter at angle theta.
OmegaNormalizer omega_normalizer(const HarmonicMap& m, double theta);

/// Residual of Hess_g v + v B_g(psi) = (1/2)(Delta_g v) g, v = e^{-(sigma -
/// phi)}, contracted with the g-unit radial vector at z. Second derivatives
/// by finite differences with step h.
double hessian_equation_residual(const HarmonicMap& m, const RadialMetric& g, cplx z, double h = 1e-3);

struct CriticalPointResult {
  std::vector<cplx> points;
  int converged_starts = 0;
};

/// Critical points of u on |z| < rmax by damped Newton from a 40 x 40 polar
/// grid of starts, deduplicated within 1e-3.
CriticalPointResult critical_points_u(const HarmonicMap& m, const RadialMetric& g, double rmax = 0.9,
                                      int grid = 40);

struct DistortionFit {
  double a = 0.0;
  double b = 0.0;
  /// max over a verification grid of (e^sigma - bound) / bound.
  double max_violation = 0.0;
  double r0 = 0.0;
  double rmax = 0.0;
  cplx critical_point{};
};

/// Phi'(r) / (a Phi(r) + b)^2.
double distortion_bound(const RadialMetric& g, double a, double b, double r);

/// Largest a (bisection) with u >= a Phi + b on r0 < |z| < rmax and
/// a Phi + b >= min(u) / 2; verified on an interlaced grid.
DistortionFit distortion_fit(const HarmonicMap& m, const RadialMetric& g, double r0, double rmax = 0.95,
                             int nr = 60, int ntheta = 120);

/// Unique critical point of u required; throws MultipleCriticalPoints.
DistortionFit distortion_check(const HarmonicMap& m, const RadialMetric& g, double r0, double rmax = 0.95);

enum class ModulusType { Log, Holder, Lipschitz };
std::string to_string(ModulusType t);

struct ModulusEstimate {
  double exponent = 0.0;
  ModulusType type = ModulusType::Holder;
  double log_exponent = 0.0;
  double rss_power = 0.0;
  double rss_power_constrained = 0.0;
  double rss_log = 0.0;
  double target_exponent = 0.0;
  std::vector<double> separations;
  std::vector<double> distances;
};

/// Chordal distance 2|a - b| / sqrt((1 + |a|^2)(1 + |b|^2)).
double chordal_distance(const Vec3& a, const Vec3& b);

/// Fits the chordal modulus of continuity of the lift near the boundary
/// over separations in [1e-4, 1e-1]. Throws InsufficientSamples with fewer
/// than 8 usable separations.
ModulusEstimate holder_estimate(const HarmonicMap& m, const RadialMetric& g, int separations = 16,
                                int angles = 16);

}  // namespace schwarzlift
