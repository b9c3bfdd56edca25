#include "schwarzlift/lift.hpp"

#include <cmath>
#include <sstream>

#include "schwarzlift/error.hpp"
#include "schwarzlift/parallel.hpp"

namespace schwarzlift {

namespace {

const cplx I(0.0, 1.0);

cplx height_integrand(const HarmonicMap& m, cplx w) { return m.h.eval(w).f1 * m.q.value(w); }

cplx height_segment(const HarmonicMap& m, cplx a, cplx b, const QuadratureOptions& opts) {
  return integrate_segment([&](cplx w) { return height_integrand(m, w); }, a, b, opts).value;
}

Vec3 components(cplx hp, cplx gp, cplx hq) {
  return {(hp + gp).real(), (hp - gp).imag(), 2.0 * hq.imag()};
}

}  // namespace

double lift_height(const HarmonicMap& m, cplx z, const QuadratureOptions& opts) {
  try {
    return 2.0 * height_segment(m, m.z0, z, opts).imag();
  } catch (const DomainError& direct) {
    if (m.z0 == cplx(0.0) || z == cplx(0.0)) {
      throw PathError(std::string("segment to z leaves the domain: ") + direct.what());
    }
    try {
      return lift_height_via(m, 0.0, z, opts);
    } catch (const DomainError& detour) {
      throw PathError(std::string("segment and detour through 0 leave the domain: ") + detour.what());
    }
  }
}

double lift_height_via(const HarmonicMap& m, cplx via, cplx z, const QuadratureOptions& opts) {
  return 2.0 * (height_segment(m, m.z0, via, opts) + height_segment(m, via, z, opts)).imag();
}

SurfacePoint lift_point(const HarmonicMap& m, cplx z, const QuadratureOptions& opts) {
  const cplx hv = m.h.value(z);
  const cplx gv = m.g.value(z);
  return {hv.real() + gv.real(), hv.imag() - gv.imag(), lift_height(m, z, opts), z};
}

LiftDerivatives lift_derivatives(const HarmonicMap& m, cplx z, cplx d) {
  const Jet3 h = m.h.eval(z);
  const Jet3 g = m.g.eval(z);
  const Jet3 q = m.q.eval(z);
  const cplx hq1 = h.f1 * q.f0;
  const cplx hq2 = h.f2 * q.f0 + h.f1 * q.f1;
  const cplx hq3 = h.f3 * q.f0 + 2.0 * h.f2 * q.f1 + h.f1 * q.f2;
  const cplx d2 = d * d;
  const cplx d3 = d2 * d;
  return {components(h.f1 * d, g.f1 * d, hq1 * d), components(h.f2 * d2, g.f2 * d2, hq2 * d2),
          components(h.f3 * d3, g.f3 * d3, hq3 * d3)};
}

Vec3 surface_normal(const HarmonicMap& m, cplx z) {
  const Vec3 xx = lift_derivatives(m, z, 1.0).d1;
  const Vec3 xy = lift_derivatives(m, z, I).d1;
  const Vec3 n = xx.cross(xy);
  const double len = n.norm();
  if (!(len > 0.0)) {
    std::ostringstream os;
    os << "degenerate tangent plane at z = " << z;
    throw ChartError(os.str());
  }
  return n / len;
}

double s1_from_derivatives(const Vec3& d1, const Vec3& d2, const Vec3& d3) {
  const double v2 = d1.squaredNorm();
  const double a = d2.dot(d1);
  return d3.dot(d1) / v2 - 3.0 * a * a / (v2 * v2) + 1.5 * d2.squaredNorm() / v2;
}

namespace {

void fill_arclength(LiftedCurve& c) {
  c.arclength.assign(c.samples.size(), 0.0);
  for (std::size_t k = 1; k < c.samples.size(); ++k) {
    c.arclength[k] = c.arclength[k - 1] + 0.5 * c.step * (c.samples[k - 1].speed + c.samples[k].speed);
  }
}

}  // namespace

LiftedCurve lift_line(const HarmonicMap& m, cplx origin, cplx dir, double x0, double x1, int n) {
  if (n < 2) throw DegenerateInput("a lifted curve needs at least two samples");
  LiftedCurve c;
  c.samples.resize(static_cast<std::size_t>(n));
  c.step = (x1 - x0) / (n - 1);
  const cplx unit = dir / std::abs(dir);
  QuadratureOptions tight;
  tight.abs_tol = 1e-13;
  parallel_for(c.samples.size(), [&](std::size_t k) {
    CurveSample& s = c.samples[k];
    s.x = x0 + static_cast<double>(k) * c.step;
    s.source = origin + s.x * unit;
    s.point = lift_point(m, s.source, tight).vec();
    s.velocity = lift_derivatives(m, s.source, unit).d1;
    s.speed = s.velocity.norm();
    s.normal = surface_normal(m, s.source);
  });
  fill_arclength(c);
  return c;
}

LiftedCurve curve_from_points(const std::vector<double>& xs, const std::vector<Vec3>& points) {
  const std::size_t n = points.size();
  if (n < 5 || xs.size() != n) throw DegenerateInput("a sampled curve needs at least five points");
  LiftedCurve c;
  c.step = (xs.back() - xs.front()) / static_cast<double>(n - 1);
  const double h = c.step;
  c.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    CurveSample& s = c.samples[k];
    s.x = xs[k];
    s.source = xs[k];
    s.point = points[k];
    if (k >= 2 && k + 2 < n) {
      s.velocity = (-points[k + 2] + 8.0 * points[k + 1] - 8.0 * points[k - 1] + points[k - 2]) / (12.0 * h);
    } else if (k < 2) {
      s.velocity = (-3.0 * points[k] + 4.0 * points[k + 1] - points[k + 2]) / (2.0 * h);
    } else {
      s.velocity = (3.0 * points[k] - 4.0 * points[k - 1] + points[k - 2]) / (2.0 * h);
    }
    s.speed = s.velocity.norm();
  }
  fill_arclength(c);
  return c;
}

LiftDerivatives curve_differences(const LiftedCurve& c, std::size_t index) {
  const std::size_t n = c.size();
  if (n < 7 || index < 3 || index + 4 > n) {
    std::ostringstream os;
    os << "sample " << index << " has fewer than three neighbors on each side (curve size " << n << ")";
    throw BoundaryIndex(os.str());
  }
  auto p = [&](int off) -> const Vec3& { return c.samples[index + off].point; };
  const double h = c.step;
  LiftDerivatives d;
  d.d1 = (-p(2) + 8.0 * p(1) - 8.0 * p(-1) + p(-2)) / (12.0 * h);
  d.d2 = (-p(2) + 16.0 * p(1) - 30.0 * p(0) + 16.0 * p(-1) - p(-2)) / (12.0 * h * h);
  d.d3 = (-p(3) + 8.0 * p(2) - 13.0 * p(1) + 13.0 * p(-1) - 8.0 * p(-2) + p(-3)) / (8.0 * h * h * h);
  return d;
}

double ahlfors_s1_numeric(const LiftedCurve& c, std::size_t index) {
  const LiftDerivatives d = curve_differences(c, index);
  return s1_from_derivatives(d.d1, d.d2, d.d3);
}

double frenet_residual(const LiftedCurve& c, std::size_t index) {
  const LiftDerivatives d = curve_differences(c, index);
  const double s1 = s1_from_derivatives(d.d1, d.d2, d.d3);
  auto v = [&](int off) { return c.samples[index + off].speed; };
  const double h = c.step;
  const double v0 = v(0);
  const double v1 = (-v(2) + 8.0 * v(1) - 8.0 * v(-1) + v(-2)) / (12.0 * h);
  const double v2 = (-v(2) + 16.0 * v(1) - 30.0 * v(0) + 16.0 * v(-1) - v(-2)) / (12.0 * h * h);
  const double schwarzian_s = v2 / v0 - 1.5 * (v1 / v0) * (v1 / v0);
  const double sp = d.d1.squaredNorm();
  const double a = d.d1.dot(d.d2);
  const double kappa2 = (d.d2.squaredNorm() * sp - a * a) / (sp * sp * sp);
  return std::abs(s1 - (schwarzian_s + 0.5 * v0 * v0 * kappa2));
}

Lemma1Terms ahlfors_s1_lemma1(const HarmonicMap& m, cplx z, cplx dir) {
  const cplx d = dir / std::abs(dir);
  const LiftDerivatives ld = lift_derivatives(m, z, d);
  const SigmaJet s = conformal_factor(m, z);
  const cplx sf = harmonic_schwarzian(m, z);
  const double sp = ld.d1.squaredNorm();
  const double a = ld.d1.dot(ld.d2);
  Lemma1Terms t;
  t.kappa2 = (ld.d2.squaredNorm() * sp - a * a) / (sp * sp * sp);
  t.kappa_i = -std::exp(-s.sigma) * 2.0 * (s.sigma_z * I * d).real();
  double ke2 = t.kappa2 - t.kappa_i * t.kappa_i;
  if (ke2 < -1e-9 * std::max(1.0, t.kappa2)) {
    std::ostringstream os;
    os << "kappa^2 - kappa_i^2 = " << ke2 << " at z = " << z;
    throw NegativeVariance(os.str());
  }
  ke2 = std::max(ke2, 0.0);
  const double e2s = std::exp(2.0 * s.sigma);
  t.re_sf = (sf * d * d).real();
  t.k_term = s.laplacian;
  t.ke_term = e2s * ke2;
  t.s1 = t.re_sf + 0.5 * t.k_term + 0.5 * t.ke_term;
  return t;
}

LiftedCurve apply_space_mobius(const SpaceMobius& t, const LiftedCurve& c) {
  std::vector<double> xs;
  std::vector<Vec3> pts;
  xs.reserve(c.size());
  pts.reserve(c.size());
  for (const auto& s : c.samples) {
    xs.push_back(s.x);
    pts.push_back(t.apply(s.point));
  }
  LiftedCurve out = curve_from_points(xs, pts);
  for (std::size_t k = 0; k < c.size(); ++k) {
    out.samples[k].source = c.samples[k].source;
    const Vec3 n = t.differential(c.samples[k].point) * c.samples[k].normal;
    out.samples[k].normal = n.norm() > 0.0 ? Vec3(n / n.norm()) : Vec3::Zero();
  }
  return out;
}

namespace {

struct FrenetAlignment {
  SpaceMobius map;
  double alpha = 0.0;
  double beta = 0.0;
};

FrenetAlignment frenet_align(const Vec3& p, const Vec3& v1, const Vec3& v2) {
  const double v = v1.norm();
  if (!(v > 0.0)) throw DegenerateInput("zero velocity at the normalization point");
  const Vec3 t = v1 / v;
  Vec3 nrm = v2 - v2.dot(t) * t;
  if (nrm.norm() <= 1e-14 * std::max(1.0, v2.norm())) {
    // Straight to second order: any unit vector orthogonal to t.
    const Vec3 trial = std::abs(t.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    nrm = trial - trial.dot(t) * t;
  }
  nrm.normalize();
  const Vec3 b = t.cross(nrm);
  Mat3 r;
  r.row(0) = t.transpose();
  r.row(1) = nrm.transpose();
  r.row(2) = b.transpose();
  FrenetAlignment out;
  out.map.translate(-p).rotate(r).dilate(1.0 / v);
  out.alpha = v2.dot(t) / v;
  out.beta = v2.dot(nrm) / v;
  return out;
}

}  // namespace

SpaceMobius normalize_second_order(const Vec3& p, const Vec3& v1, const Vec3& v2) {
  FrenetAlignment a = frenet_align(p, v1, v2);
  a.map.special_conformal(Vec3(0.5 * a.alpha, -0.5 * a.beta, 0.0));
  return a.map;
}

OmegaNormalizer normalize_log_speed(const Vec3& p, const Vec3& v1, const Vec3& v2) {
  FrenetAlignment a = frenet_align(p, v1, v2);
  OmegaNormalizer out;
  out.alpha = a.alpha;
  out.c = 0.5 * (1.0 + a.alpha);
  out.map = a.map;
  out.map.special_conformal(Vec3(out.c, 0.0, 0.0));
  return out;
}

}  // namespace schwarzlift
