#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace schwarzlift {

/// Even weight p on (-1, 1) for u'' + p u = 0.
struct NehariFunction {
  std::string name;
  std::function<double(double)> p;
  /// Closed-form extremal Phi and Phi' when known.
  std::function<double(double)> phi;
  std::function<double(double)> phi1;
  std::optional<double> lambda;
  /// Phi(1) = infinity.
  bool complete = true;

  double operator()(double x) const { return p(x); }

  static NehariFunction constant(double value);
  /// pi^2 / 4.
  static NehariFunction pi2over4();
  /// (1 - x^2)^-2.
  static NehariFunction nehari2();
  /// 2 (1 - x^2)^-1.
  static NehariFunction two_over_1mx2();
  /// (1 - x^2)^-1; not complete.
  static NehariFunction one_over_1mx2();
  static NehariFunction custom(std::string name, std::function<double(double)> p);
  /// t * p, closed forms dropped unless t == 1.
  NehariFunction scaled(double t) const;
};

/// Catalogue keys: pi2over4, nehari2, two_over_1mx2, one_over_1mx2, zero,
/// and "<t>*<key>" for scaled entries. Throws ParamError for unknown keys.
NehariFunction nehari_from_key(const std::string& key);
/// Complete entries satisfying p <= A.
std::vector<std::string> complete_catalogue();

struct NehariAudit {
  double max_asymmetry = 0.0;
  double min_value = 0.0;
  /// Largest increase of (1 - x^2)^2 p(x) between consecutive grid points.
  double max_increase = 0.0;
  bool ok = false;
};

/// Evenness, positivity on [0, 1), and monotonicity of (1 - x^2)^2 p on a
/// grid of spacing `step`.
NehariAudit audit_nehari(const NehariFunction& p, double step = 1e-3);

/// Extremal data on a grid uniform in artanh(x), x in [0, rmax].
class ExtremalProfile {
 public:
  /// Throws DisconjugacyFailure if u0 vanishes before rmax.
  static ExtremalProfile solve(const NehariFunction& p, double rmax = 1.0 - 1e-4, int n = 4001);

  const NehariFunction& nehari() const { return p_; }
  double rmax() const { return rmax_; }
  const std::vector<double>& grid() const { return x_; }
  const std::vector<double>& u0_nodes() const { return u_; }
  const std::vector<double>& phi_nodes() const { return phi_; }

  /// Interpolants; u0 and Phi' are even, Phi and Phi'' are odd. Throw
  /// OutOfRange for |x| > rmax.
  double u0(double x) const;
  double du0(double x) const;
  double phi(double x) const;
  double phi1(double x) const;
  double phi2(double x) const;
  /// Phi'' / Phi' = -2 u0' / u0 at r >= 0.
  double rho(double r) const;
  /// Derivative of rho, 2 p + rho^2 / 2.
  double rho1(double r) const;
  /// rho^2 / 4 + rho / (2 r), with A(0) = p(0).
  double A(double r) const;
  /// 2 Phi'^-2 (A + p).
  double abs_curvature(double r) const;
  /// r with Phi(r) = s, for |s| <= Phi(rmax).
  double phi_inverse(double s) const;

 private:
  std::size_t locate(double ax) const;
  void check_range(double x) const;

  NehariFunction p_;
  double rmax_ = 0.0;
  double ds_ = 0.0;
  std::vector<double> x_, u_, du_, phi_, phi1_, phi2_, p_nodes_;
};

struct DisconjugacyReport {
  bool pass = false;
  double epsilon = 1e-4;
  /// Interior zeros of the solution vanishing at -1 + epsilon.
  std::vector<double> zeros;
  std::string caveat;
};

/// Integrates u(-1+eps) = 0, u'(-1+eps) = 1 to 1 - eps and records zeros.
DisconjugacyReport disconjugacy_check(const NehariFunction& p, double epsilon = 1e-4);

/// Largest t (to `tol`) with t p still passing disconjugacy_check.
double max_disconjugate_scale(const NehariFunction& p, double tol = 1e-3, double epsilon = 1e-4);

struct LambdaResult {
  double lambda = 0.0;
  double mu = 0.0;
};

/// lim (1 - x^2)^2 p(x) as x -> 1 by Richardson extrapolation; throws
/// NonconvergentLimit if successive extrapolants differ by more than 1e-6.
LambdaResult lambda_limit(const NehariFunction& p);

}  // namespace schwarzlift
