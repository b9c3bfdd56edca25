#include "schwarzlift/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "schwarzlift/error.hpp"
#include "schwarzlift/parallel.hpp"

namespace schwarzlift {

namespace {

const cplx I(0.0, 1.0);

Eigen::Vector2d gradient(const RealPartials& d) { return {d.x, d.y}; }

Eigen::Matrix2d hessian(const RealPartials& d) {
  Eigen::Matrix2d h;
  h << d.xx, d.xy, d.xy, d.yy;
  return h;
}

}  // namespace

TracelessTensor TracelessTensor::from_matrix(const Eigen::Matrix2d& m) {
  return {0.5 * (m(0, 0) - m(1, 1)), -0.5 * (m(0, 1) + m(1, 0))};
}

RealPartials real_partials(const SigmaJet& psi) {
  RealPartials d;
  d.x = 2.0 * psi.sigma_z.real();
  d.y = -2.0 * psi.sigma_z.imag();
  d.xx = 0.5 * (psi.laplacian + 4.0 * psi.sigma_zz.real());
  d.yy = 0.5 * (psi.laplacian - 4.0 * psi.sigma_zz.real());
  d.xy = -2.0 * psi.sigma_zz.imag();
  return d;
}

TracelessTensor schwarzian_tensor(const SigmaJet& psi) {
  return TracelessTensor::from_complex(2.0 * (psi.sigma_zz - psi.sigma_z * psi.sigma_z));
}

TracelessTensor schwarzian_tensor_matrix(const SigmaJet& psi) {
  const RealPartials d = real_partials(psi);
  const Eigen::Vector2d g = gradient(d);
  return TracelessTensor::from_matrix(hessian(d) - g * g.transpose());
}

TracelessTensor schwarzian_tensor_conformal(const SigmaJet& psi, const SigmaJet& phi) {
  const RealPartials d = real_partials(psi);
  const Eigen::Vector2d g = gradient(d);
  const Eigen::Vector2d f = gradient(real_partials(phi));
  return TracelessTensor::from_matrix(hessian(d) - f * g.transpose() - g * f.transpose() - g * g.transpose());
}

SigmaJet jet_difference(const SigmaJet& a, const SigmaJet& b) {
  SigmaJet d;
  d.sigma = a.sigma - b.sigma;
  d.sigma_z = a.sigma_z - b.sigma_z;
  d.sigma_zz = a.sigma_zz - b.sigma_zz;
  d.sigma_x = a.sigma_x - b.sigma_x;
  d.sigma_y = a.sigma_y - b.sigma_y;
  d.laplacian = a.laplacian - b.laplacian;
  return d;
}

double subtraction_residual(const SigmaJet& sigma, const SigmaJet& phi) {
  const cplx lhs = schwarzian_tensor_conformal(jet_difference(sigma, phi), phi).complex();
  const cplx rhs = schwarzian_tensor(sigma).complex() - schwarzian_tensor(phi).complex();
  return std::abs(lhs - rhs);
}

RadialMetric RadialMetric::solve(const NehariFunction& p, double rmax, int n) {
  return RadialMetric(std::make_shared<const ExtremalProfile>(ExtremalProfile::solve(p, rmax, n)));
}

SigmaJet RadialMetric::jet(cplx z) const {
  const double r = std::abs(z);
  const ExtremalProfile& e = *profile_;
  SigmaJet j;
  j.sigma = std::log(e.phi1(r));
  if (r < 1e-8) {
    j.laplacian = 4.0 * p(0.0);
    return j;
  }
  const double rho = e.rho(r);
  const double rho1 = e.rho1(r);
  const cplx zb = std::conj(z);
  j.sigma_z = rho * zb / (2.0 * r);
  j.sigma_zz = zb * zb / (4.0 * r * r) * (rho1 - rho / r);
  j.sigma_x = 2.0 * j.sigma_z.real();
  j.sigma_y = -2.0 * j.sigma_z.imag();
  j.laplacian = rho1 + rho / r;
  return j;
}

bool RadialMetric::negatively_curved() const {
  const auto& xs = profile_->grid();
  return std::all_of(xs.begin(), xs.end(), [&](double x) { return profile_->A(x) + p(x) > 0.0; });
}

Lemma2Terms lemma2_margin(const HarmonicMap& m, const RadialMetric& g, cplx z) {
  const double r = std::abs(z);
  const ExtremalProfile& e = g.profile();
  const double f1 = e.phi1(r);
  const double scale = 1.0 / (f1 * f1);
  const cplx zeta = r > 0.0 ? z / r : cplx(1.0);
  const double A = e.A(r);
  const double p = g.p(r);
  const cplx sf = harmonic_schwarzian(m, z);
  const double k = conformal_factor(m, z).laplacian;
  Lemma2Terms t;
  t.tensor_norm = scale * std::abs(zeta * zeta * sf + A - p);
  t.curvature_term = scale * k;
  t.half_kg = scale * (A + p);
  t.margin = t.half_kg - t.tensor_norm - t.curvature_term;
  return t;
}

Lemma2Terms lemma2_margin_tensor(const HarmonicMap& m, const RadialMetric& g, cplx z) {
  const SigmaJet s = conformal_factor(m, z);
  const SigmaJet f = g.jet(z);
  const double e2phi = std::exp(-2.0 * f.sigma);
  Lemma2Terms t;
  t.tensor_norm = e2phi * schwarzian_tensor_conformal(jet_difference(s, f), f).norm();
  t.curvature_term = e2phi * s.laplacian;
  t.half_kg = 0.5 * e2phi * f.laplacian;
  t.margin = t.half_kg - t.tensor_norm - t.curvature_term;
  return t;
}

double u_function(const HarmonicMap& m, const RadialMetric& g, cplx z) {
  const double f1 = g.profile().phi1(std::abs(z));
  return std::sqrt(f1 / std::exp(conformal_factor(m, z).sigma));
}

namespace {

std::vector<double> diameter_grid(const RadialMetric& g, int n, double r_end, double& step) {
  if (n < 9) throw DegenerateInput("convexity checks need at least nine samples");
  if (n % 2 == 0) ++n;
  const double smax = g.profile().phi(r_end);
  step = 2.0 * smax / (n - 1);
  std::vector<double> s(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) s[k] = -smax + k * step;
  s[static_cast<std::size_t>(n / 2)] = 0.0;
  return s;
}

double d2_fourth(const std::vector<double>& v, std::size_t k, double h) {
  return (-v[k + 2] + 16.0 * v[k + 1] - 30.0 * v[k] + 16.0 * v[k - 1] - v[k - 2]) / (12.0 * h * h);
}

double d1_fourth(const std::vector<double>& v, std::size_t k, double h) {
  return (-v[k + 2] + 8.0 * v[k + 1] - 8.0 * v[k - 1] + v[k - 2]) / (12.0 * h);
}

void finish(ConvexityReport& rep, std::size_t lo, std::size_t hi) {
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = lo; k < hi; ++k) {
    if (rep.margins[k] < rep.min_margin) {
      rep.min_margin = rep.margins[k];
      rep.argmin = rep.s[k];
    }
  }
}

}  // namespace

ConvexityReport radial_hessian_check(const HarmonicMap& m, const RadialMetric& g, double theta, int n,
                                     double r_end) {
  ConvexityReport rep;
  rep.check = "radial_hessian";
  rep.theta = theta;
  double h = 0.0;
  rep.s = diameter_grid(g, n, r_end, h);
  const std::size_t count = rep.s.size();
  rep.n = static_cast<int>(count);
  rep.values.assign(count, 0.0);
  std::vector<double> abs_k(count), e2psi(count);
  const cplx dir = std::polar(1.0, theta);
  parallel_for(count, [&](std::size_t k) {
    const double r = g.profile().phi_inverse(rep.s[k]);
    const cplx z = r * dir;
    const SigmaJet sj = conformal_factor(m, z);
    const double f1 = g.profile().phi1(r);
    rep.values[k] = std::sqrt(f1 / std::exp(sj.sigma));
    abs_k[k] = std::exp(-2.0 * sj.sigma) * sj.laplacian;
    e2psi[k] = std::exp(2.0 * sj.sigma) / (f1 * f1);
  });
  rep.margins.assign(count, std::numeric_limits<double>::infinity());
  rep.min_margin_scaled = std::numeric_limits<double>::infinity();
  for (std::size_t k = 2; k + 2 < count; ++k) {
    const double u = rep.values[k];
    const double d2 = d2_fourth(rep.values, k, h);
    const double rhs = 0.25 * abs_k[k] / (u * u * u);
    rep.margins[k] = d2 - rhs;
    rep.min_margin_scaled = std::min(rep.min_margin_scaled, d2 - rhs * e2psi[k]);
  }
  finish(rep, 2, count - 2);
  rep.derivative_at_zero = d1_fourth(rep.values, count / 2, h);
  rep.scale = *std::max_element(rep.values.begin(), rep.values.end());
  rep.pass = rep.min_margin >= -1e-6;
  return rep;
}

ConvexityReport omega_profile(const HarmonicMap& m, const SpaceMobius& t, const RadialMetric& g, double theta,
                              int n, double r_end) {
  ConvexityReport rep;
  rep.check = "omega_profile";
  rep.theta = theta;
  double h = 0.0;
  rep.s = diameter_grid(g, n, r_end, h);
  const std::size_t count = rep.s.size();
  rep.n = static_cast<int>(count);
  rep.values.assign(count, 0.0);
  const cplx dir = std::polar(1.0, theta);
  parallel_for(count, [&](std::size_t k) {
    const double r = g.profile().phi_inverse(rep.s[k]);
    const cplx z = r * dir;
    const double speed = t.scale(lift_point(m, z).vec()) * std::exp(conformal_factor(m, z).sigma);
    rep.values[k] = std::sqrt(g.profile().phi1(r) / speed);
  });
  rep.margins.assign(count, std::numeric_limits<double>::infinity());
  for (std::size_t k = 1; k + 1 < count; ++k) {
    rep.margins[k] = rep.values[k + 1] - 2.0 * rep.values[k] + rep.values[k - 1];
  }
  finish(rep, 1, count - 1);
  rep.min_margin_scaled = rep.min_margin;
  rep.scale = 0.0;
  for (double v : rep.values) rep.scale = std::max(rep.scale, std::abs(v));
  rep.derivative_at_zero = d1_fourth(rep.values, count / 2, h);
  rep.pass = rep.min_margin >= -1e-6 * rep.scale;
  return rep;
}

double log_speed_derivative_at_zero(const HarmonicMap& m, const SpaceMobius& t, const RadialMetric& g,
                                    double theta, double h) {
  const cplx dir = std::polar(1.0, theta);
  auto tau = [&](double s) {
    const cplx z = g.profile().phi_inverse(s) * dir;
    QuadratureOptions tight;
    tight.abs_tol = 1e-14;
    return std::log(t.scale(lift_point(m, z, tight).vec())) + conformal_factor(m, z).sigma;
  };
  return (-tau(2 * h) + 8.0 * tau(h) - 8.0 * tau(-h) + tau(-2 * h)) / (12.0 * h);
}

OmegaNormalizer omega_normalizer(const HarmonicMap& m, double theta) {
  const cplx dir = std::polar(1.0, theta);
  const LiftDerivatives d = lift_derivatives(m, 0.0, dir);
  return normalize_log_speed(lift_point(m, 0.0).vec(), d.d1, d.d2);
}

double hessian_equation_residual(const HarmonicMap& m, const RadialMetric& g, cplx z, double h) {
  const double r = std::abs(z);
  const double theta = r > 0.0 ? std::arg(z) : 0.0;
  const cplx dir = std::polar(1.0, theta);
  const ExtremalProfile& e = g.profile();
  // Closed-form Phi' when the weight carries one.
  const auto& closed = e.nehari().phi1;
  auto phi1 = [&](double t) { return closed ? closed(t) : e.phi1(t); };
  auto v = [&](cplx w) { return phi1(std::abs(w)) / std::exp(conformal_factor(m, w).sigma); };
  // Along the diameter through z, parametrized by the signed radius t.
  auto vt = [&](double t) { return v(t * dir); };
  const double v0 = vt(r);
  const double vr = (-vt(r + 2 * h) + 8.0 * vt(r + h) - 8.0 * vt(r - h) + vt(r - 2 * h)) / (12.0 * h);
  const double vrr =
      (-vt(r + 2 * h) + 16.0 * vt(r + h) - 30.0 * v0 + 16.0 * vt(r - h) - vt(r - 2 * h)) / (12.0 * h * h);
  const double f1 = e.phi1(r);
  const double f2 = e.phi2(r);
  const double hess = (vrr - vr * f2 / f1) / (f1 * f1);
  auto d2 = [&](cplx e) {
    return (-v(z + 2.0 * h * e) + 16.0 * v(z + h * e) - 30.0 * v0 + 16.0 * v(z - h * e) - v(z - 2.0 * h * e)) /
           (12.0 * h * h);
  };
  const double lap = d2(1.0) + d2(I);
  const cplx zeta = dir;
  const cplx tensor = harmonic_schwarzian(m, z) - std::conj(zeta * zeta) * (g.p(r) - e.A(r));
  const double e2phi = 1.0 / (f1 * f1);
  return std::abs(hess + v0 * e2phi * (tensor * zeta * zeta).real() - 0.5 * e2phi * lap);
}

CriticalPointResult critical_points_u(const HarmonicMap& m, const RadialMetric& g, double rmax, int grid) {
  const std::size_t starts = static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid);
  std::vector<cplx> found(starts, cplx(std::numeric_limits<double>::quiet_NaN(), 0.0));
  parallel_for(starts, [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / grid, j = static_cast<int>(idx) % grid;
    cplx z = std::polar(rmax * (i + 0.5) / grid, 2.0 * kPi * j / grid);
    // F = log u = (phi - sigma) / 2.
    auto grad_hess = [&](cplx w, Eigen::Vector2d& gr, Eigen::Matrix2d& he) {
      const RealPartials s = real_partials(conformal_factor(m, w));
      const RealPartials f = real_partials(g.jet(w));
      gr = 0.5 * (gradient(f) - gradient(s));
      he = 0.5 * (hessian(f) - hessian(s));
    };
    Eigen::Vector2d gr;
    Eigen::Matrix2d he;
    try {
      for (int it = 0; it < 60; ++it) {
        grad_hess(z, gr, he);
        if (gr.norm() < 1e-10) {
          found[idx] = z;
          return;
        }
        Eigen::Vector2d step = -gr;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(he);
        if (es.eigenvalues().minCoeff() > 1e-12 * std::max(1.0, es.eigenvalues().maxCoeff())) {
          step = -he.ldlt().solve(gr);
        } else {
          step *= 0.1;
        }
        double lambda = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 30; ++bt) {
          const cplx cand = z + lambda * cplx(step.x(), step.y());
          if (std::abs(cand) < rmax) {
            Eigen::Vector2d g2;
            Eigen::Matrix2d h2;
            grad_hess(cand, g2, h2);
            if (g2.norm() < gr.norm()) {
              z = cand;
              moved = true;
              break;
            }
          }
          lambda *= 0.5;
        }
        if (!moved) return;
      }
    } catch (const Error&) {
      return;
    }
  });
  CriticalPointResult out;
  for (const cplx& z : found) {
    if (std::isnan(z.real())) continue;
    ++out.converged_starts;
    const bool dup = std::any_of(out.points.begin(), out.points.end(),
                                 [&](const cplx& w) { return std::abs(w - z) < 1e-3; });
    if (!dup) out.points.push_back(z);
  }
  return out;
}

double distortion_bound(const RadialMetric& g, double a, double b, double r) {
  const double d = a * g.profile().phi(r) + b;
  return g.profile().phi1(r) / (d * d);
}

DistortionFit distortion_fit(const HarmonicMap& m, const RadialMetric& g, double r0, double rmax, int nr,
                             int ntheta) {
  if (!(r0 >= 0.0 && r0 < rmax && rmax <= g.rmax())) throw OutOfRange("distortion annulus outside the profile");
  const ExtremalProfile& e = g.profile();
  const std::size_t count = static_cast<std::size_t>(nr) * static_cast<std::size_t>(ntheta);
  std::vector<double> u(count), phi(count);
  auto radius = [&](double i) { return r0 + (rmax - r0) * i / (nr - 1); };
  parallel_for(count, [&](std::size_t k) {
    const int i = static_cast<int>(k) / ntheta, j = static_cast<int>(k) % ntheta;
    const double r = radius(i);
    u[k] = u_function(m, g, std::polar(r, 2.0 * kPi * j / ntheta));
    phi[k] = e.phi(r);
  });
  const double umin = *std::min_element(u.begin(), u.end());
  // Lower envelope b(a) of u - a Phi, each node lowered by half its largest
  // jump to a grid neighbor.
  auto envelope = [&](double a) {
    double lo = std::numeric_limits<double>::infinity();
    auto w = [&](int i, int j) {
      const std::size_t k = static_cast<std::size_t>(i) * ntheta + static_cast<std::size_t>((j + ntheta) % ntheta);
      return u[k] - a * phi[k];
    };
    for (int i = 0; i < nr; ++i) {
      for (int j = 0; j < ntheta; ++j) {
        const double c = w(i, j);
        double jump = std::max(std::abs(c - w(i, j + 1)), std::abs(c - w(i, j - 1)));
        if (i + 1 < nr) jump = std::max(jump, std::abs(c - w(i + 1, j)));
        if (i > 0) jump = std::max(jump, std::abs(c - w(i - 1, j)));
        lo = std::min(lo, c - 0.5 * jump);
      }
    }
    return lo;
  };
  const double phi0 = e.phi(r0);
  auto feasible = [&](double a) { return a * phi0 + envelope(a) >= 0.5 * umin; };
  double lo = 0.0, hi = 1.0;
  while (feasible(hi) && hi < 1e6) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) lo = mid; else hi = mid;
  }
  DistortionFit fit;
  fit.a = lo;
  fit.b = envelope(lo);
  fit.r0 = r0;
  fit.rmax = rmax;
  fit.critical_point = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
  const std::size_t vcount = static_cast<std::size_t>(nr - 1) * static_cast<std::size_t>(ntheta);
  std::vector<double> viol(vcount);
  parallel_for(vcount, [&](std::size_t k) {
    const int i = static_cast<int>(k) / ntheta, j = static_cast<int>(k) % ntheta;
    const double r = radius(i + 0.5);
    const cplx z = std::polar(r, 2.0 * kPi * (j + 0.5) / ntheta);
    const double bound = distortion_bound(g, fit.a, fit.b, r);
    viol[k] = (std::exp(conformal_factor(m, z).sigma) - bound) / bound;
  });
  fit.max_violation = *std::max_element(viol.begin(), viol.end());
  return fit;
}

DistortionFit distortion_check(const HarmonicMap& m, const RadialMetric& g, double r0, double rmax) {
  const CriticalPointResult cps = critical_points_u(m, g, rmax);
  if (cps.points.size() > 1) {
    std::ostringstream os;
    os << "u has " << cps.points.size() << " separated critical points; the lift is planar and the analytic "
       << "case applies";
    throw MultipleCriticalPoints(os.str());
  }
  DistortionFit fit = distortion_fit(m, g, r0, rmax);
  if (!cps.points.empty()) fit.critical_point = cps.points.front();
  return fit;
}

std::string to_string(ModulusType t) {
  switch (t) {
    case ModulusType::Log: return "log";
    case ModulusType::Holder: return "holder";
    case ModulusType::Lipschitz: return "lipschitz";
  }
  return "unknown";
}

double chordal_distance(const Vec3& a, const Vec3& b) {
  return 2.0 * (a - b).norm() / std::sqrt((1.0 + a.squaredNorm()) * (1.0 + b.squaredNorm()));
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rss = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    f.rss += r * r;
  }
  return f;
}

double rss_fixed_slope(const std::vector<double>& x, const std::vector<double>& y, double slope) {
  double c = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) c += y[i] - slope * x[i];
  c /= static_cast<double>(x.size());
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - c - slope * x[i];
    rss += r * r;
  }
  return rss;
}

}  // namespace

ModulusEstimate holder_estimate(const HarmonicMap& m, const RadialMetric& g, int separations, int angles) {
  const std::size_t nd = static_cast<std::size_t>(separations);
  const std::size_t na = static_cast<std::size_t>(angles);
  std::vector<double> ds(nd);
  for (std::size_t k = 0; k < nd; ++k) ds[k] = std::pow(10.0, -4.0 + 3.0 * static_cast<double>(k) / (nd - 1));
  std::vector<double> best(nd * na, std::numeric_limits<double>::quiet_NaN());
  parallel_for(nd * na, [&](std::size_t idx) {
    const double d = ds[idx / na];
    const double theta = 2.0 * kPi * static_cast<double>(idx % na) / static_cast<double>(na);
    try {
      const cplx z1 = std::polar(1.0 - d, theta);
      const cplx zt = std::polar(1.0 - d, theta + d / (1.0 - d));
      const cplx zr = std::polar(1.0 - 2.0 * d, theta);
      const Vec3 p1 = lift_point(m, z1).vec();
      const double ct = chordal_distance(p1, lift_point(m, zt).vec()) * d / std::abs(z1 - zt);
      const double cr = chordal_distance(p1, lift_point(m, zr).vec());
      best[idx] = std::max(ct, cr);
    } catch (const Error&) {
    }
  });
  ModulusEstimate est;
  std::vector<double> lx, ly, ll;
  for (std::size_t k = 0; k < nd; ++k) {
    double mx = -1.0;
    for (std::size_t a = 0; a < na; ++a) {
      const double v = best[k * na + a];
      if (std::isfinite(v)) mx = std::max(mx, v);
    }
    if (!(mx > 0.0)) continue;
    est.separations.push_back(ds[k]);
    est.distances.push_back(mx);
    lx.push_back(std::log(ds[k]));
    ly.push_back(std::log(mx));
    ll.push_back(std::log(std::log(1.0 / ds[k])));
  }
  if (lx.size() < 8) {
    std::ostringstream os;
    os << "only " << lx.size() << " usable separations (need 8)";
    throw InsufficientSamples(os.str());
  }
  const LineFit power = least_squares(lx, ly);
  const LineFit logfit = least_squares(ll, ly);
  est.exponent = power.slope;
  est.rss_power = power.rss;
  est.rss_power_constrained = power.slope >= 0.05 ? power.rss : rss_fixed_slope(lx, ly, 0.05);
  est.log_exponent = -logfit.slope;
  est.rss_log = logfit.rss;
  if (est.rss_log < est.rss_power_constrained) {
    est.type = ModulusType::Log;
  } else {
    est.type = est.exponent >= 0.999 ? ModulusType::Lipschitz : ModulusType::Holder;
  }
  double lambda = g.profile().nehari().lambda.value_or(0.0);
  try {
    lambda = lambda_limit(g.profile().nehari()).lambda;
  } catch (const NonconvergentLimit&) {
  }
  est.target_exponent = std::sqrt(1.0 - lambda);
  return est;
}

}  // namespace schwarzlift
