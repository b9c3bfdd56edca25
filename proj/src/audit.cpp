#include "schwarzlift/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "schwarzlift/criterion.hpp"
#include "schwarzlift/error.hpp"
#include "schwarzlift/parallel.hpp"

namespace schwarzlift {

namespace {
const cplx I(0.0, 1.0);
}

CutPointReport cut_point_circle_audit(const ExampleMap& ex, int n, double ymax) {
  if (ex.family != Family::CatenoidExp || ex.t != 1.0)
    throw NotApplicable("cut-point circle audit applies to catenoid_exp with t = 1 only");
  const HarmonicMap& m = ex.map;
  CutPointReport rep;
  rep.radius = ex.c + 1.0 / ex.c;
  const NehariFunction p = NehariFunction::pi2over4();
  std::vector<double> circle(n), w(n), margin(n), gap(n), rel(n);
  parallel_for(n, [&](std::size_t k) {
    const double y = -ymax + 2.0 * ymax * static_cast<double>(k) / (n - 1);
    const cplx z(0.0, y);
    const SurfacePoint s = lift_point(m, z);
    circle[k] = std::abs(std::hypot(s.u, s.v) - rep.radius);
    w[k] = std::abs(s.w);
    margin[k] = std::abs(2.0 * p(y) - criterion_lhs(m, z));
    const Lemma1Terms t = ahlfors_s1_lemma1(m, z, I);
    const double e2s = std::exp(2.0 * conformal_factor(m, z).sigma);
    const double ke2 = t.ke_term / e2s;
    const double absk = t.k_term / e2s;
    gap[k] = std::abs(ke2 - absk);
    rel[k] = gap[k] / absk;
  });
  rep.circle_residual = *std::max_element(circle.begin(), circle.end());
  rep.max_abs_w = *std::max_element(w.begin(), w.end());
  rep.max_abs_margin = *std::max_element(margin.begin(), margin.end());
  rep.max_kappa_gap = *std::max_element(gap.begin(), gap.end());
  rep.max_kappa_rel = *std::max_element(rel.begin(), rel.end());
  rep.lift_plus_i = lift_point(m, I);
  rep.lift_minus_i = lift_point(m, -I);
  rep.pass = rep.circle_residual <= 1e-8 && rep.max_abs_w <= 1e-8 && rep.max_abs_margin <= 1e-9 &&
             rep.max_kappa_rel <= 1e-6;
  return rep;
}

HilleReport hille_audit(double epsilon, double c, double rmax, int nr, int ntheta) {
  const ExampleMap ex = hille(epsilon, c);
  HilleReport rep;
  rep.epsilon = epsilon;
  rep.c = c;
  const std::size_t n = static_cast<std::size_t>(nr) * ntheta + 1;
  std::vector<double> excess(n), modulus(n);
  std::vector<cplx> where(n);
  parallel_for(n, [&](std::size_t k) {
    cplx z = 0.0;
    if (k > 0) {
      const double r = rmax * static_cast<double>((k - 1) / ntheta + 1) / nr;
      z = std::polar(r, 2.0 * kPi * static_cast<double>((k - 1) % ntheta) / ntheta);
    }
    const double q = 1.0 - std::norm(z);
    excess[k] = criterion_lhs(ex.map, z) * q * q - 2.0;
    modulus[k] = std::abs(ex.F->value(z));
    where[k] = z;
  });
  const auto it = std::max_element(excess.begin(), excess.end());
  rep.delta = *it;
  rep.delta_argmax = where[it - excess.begin()];
  rep.min_abs_F = *std::min_element(modulus.begin(), modulus.end());
  rep.max_abs_F = *std::max_element(modulus.begin(), modulus.end());

  // F(z) = e^{i eps w} with w = 2 artanh z.
  const double period = 2.0 * kPi / epsilon;
  for (int s = -6; s <= 6; ++s) {
    for (double y : {-1.0, 0.0, 1.0}) {
      cplx w(0.5 * period * s + 0.3 * period * (s % 2 == 0 ? 0.1 : -0.1), y);
      bool ok = false;
      for (int it2 = 0; it2 < 100; ++it2) {
        const cplx e = std::exp(I * epsilon * w);
        const cplx step = (e - 1.0) / (I * epsilon * e);
        w -= step;
        if (!(std::abs(w.imag()) < kPi / 2.0)) break;
        if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(w))) {
          ok = true;
          break;
        }
      }
      if (!ok || !(std::abs(w.imag()) < kPi / 2.0)) continue;
      const bool seen = std::any_of(rep.roots.begin(), rep.roots.end(),
                                    [&](const HilleRoot& r) { return std::abs(r.w - w) < 1e-6 * std::max(1.0, std::abs(w)); });
      if (seen) continue;
      HilleRoot root;
      root.w = w;
      root.z = std::tanh(w / 2.0);
      root.residual = std::abs(std::exp(I * epsilon * w) - 1.0);
      const double a = std::abs(w.real());
      root.boundary_gap = a == 0.0 ? 1.0 - std::abs(root.z) : 2.0 / (std::exp(a) + 1.0);
      rep.roots.push_back(root);
    }
  }
  std::sort(rep.roots.begin(), rep.roots.end(), [](const HilleRoot& a, const HilleRoot& b) { return a.w.real() < b.w.real(); });
  return rep;
}

HarmonicMap compose_disk(const HarmonicMap& m, const DiskMobius& t) {
  const AnalyticFn T = t.as_analytic();
  return HarmonicMap::make(compose(m.h, T), compose(m.g, T), compose(m.q, T), t.inverse(m.z0), compose(m.q_inv, T),
                           false);
}

TransferReport mobius_transfer_check(const HarmonicMap& m, const NehariFunction& p, const DiskMobius& t, int n,
                                     double xmax) {
  const HarmonicMap F = compose_disk(m, t);
  TransferReport rep;
  rep.transform = t;
  std::vector<double> margin(n);
  parallel_for(n, [&](std::size_t k) {
    const double x = -xmax + 2.0 * xmax * static_cast<double>(k) / (n - 1);
    margin[k] = 2.0 * p(x) - criterion_lhs(F, x);
  });
  const auto it = std::min_element(margin.begin(), margin.end());
  rep.min_margin = *it;
  rep.argmin = -xmax + 2.0 * xmax * static_cast<double>(it - margin.begin()) / (n - 1);
  rep.min_trick_margin = -nehari_trick_violation(p, t, n, xmax);
  return rep;
}

double nehari_trick_violation(const NehariFunction& p, const DiskMobius& t, int n, double xmax) {
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const double x = -xmax + 2.0 * xmax * k / (n - 1);
    const double r = std::abs(t.apply(x));
    const double a = 1.0 - r * r;
    const double b = 1.0 - x * x;
    worst = std::max(worst, a * a * p(r) - b * b * p(x));
  }
  return worst;
}

}  // namespace schwarzlift
