#include "schwarzlift/harmonic.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "schwarzlift/error.hpp"

namespace schwarzlift {

HarmonicMap HarmonicMap::make(AnalyticFn h, AnalyticFn g, AnalyticFn q, cplx z0,
                              std::optional<AnalyticFn> q_inv, bool audit) {
  HarmonicMap m;
  m.h = std::move(h);
  m.g = std::move(g);
  m.q = std::move(q);
  m.q_inv = q_inv ? std::move(*q_inv) : AnalyticFn::constant(1.0) / m.q;
  m.z0 = z0;
  if (audit) {
    const double defect = m.audit_defect();
    if (defect > 1e-9) {
      std::ostringstream os;
      os << "dilatation audit failed: |g' - q^2 h'| relative defect " << defect;
      throw ParamError(os.str());
    }
  }
  return m;
}

HarmonicMap HarmonicMap::analytic(AnalyticFn h, cplx z0) {
  const AnalyticFn zero = AnalyticFn::constant(0.0);
  return make(std::move(h), zero, zero, z0, zero, false);
}

cplx HarmonicMap::value(cplx z) const { return h.value(z) + std::conj(g.value(z)); }

double HarmonicMap::audit_defect(int points, double radius) const {
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < points; ++k) {
    const double r = radius * std::sqrt(u(rng));
    const double t = 2.0 * kPi * u(rng);
    const cplx z = std::polar(r, t);
    try {
      const cplx hp = h.eval(z).f1;
      const cplx gp = g.eval(z).f1;
      const cplx qv = q.value(z);
      const cplx rhs = qv * qv * hp;
      const double scale = std::abs(gp) + std::abs(rhs);
      if (scale == 0.0) continue;
      worst = std::max(worst, std::abs(gp - rhs) / scale);
    } catch (const DomainError&) {
      continue;
    }
  }
  return worst;
}

ChartJets chart_jets(const HarmonicMap& m, cplx z, Chart chart) {
  ChartJets c;
  c.h = m.h.eval(z);
  c.g = m.g.eval(z);
  const double ah = std::abs(c.h.f1);
  const double ag = std::abs(c.g.f1);
  if (ah + ag <= kCriticalTol) {
    std::ostringstream os;
    os << "h' and g' both vanish at z = " << z;
    throw ChartError(os.str());
  }
  bool swap = chart == Chart::G || (chart == Chart::Auto && ag > ah);
  if ((swap ? ag : ah) <= kCriticalTol) {
    std::ostringstream os;
    os << (swap ? "g" : "h") << "-chart degenerate at z = " << z;
    throw ChartError(os.str());
  }
  c.swapped = swap;
  c.lead = swap ? c.g : c.h;
  c.dil = swap ? m.q_inv.eval(z) : m.q.eval(z);
  return c;
}

SigmaJet conformal_factor(const HarmonicMap& m, cplx z, Chart chart) {
  const ChartJets c = chart_jets(m, z, chart);
  const Jet3& H = c.lead;
  const Jet3& Q = c.dil;
  const double n = 1.0 + std::norm(Q.f0);
  const cplx qq = Q.f1 * std::conj(Q.f0) / n;
  SigmaJet s;
  s.swapped = c.swapped;
  s.sigma = std::log(std::abs(H.f1)) + std::log(n);
  s.sigma_z = H.f2 / (2.0 * H.f1) + qq;
  s.sigma_zz = (H.f3 * H.f1 - H.f2 * H.f2) / (2.0 * H.f1 * H.f1) + Q.f2 * std::conj(Q.f0) / n - qq * qq;
  s.sigma_x = 2.0 * s.sigma_z.real();
  s.sigma_y = -2.0 * s.sigma_z.imag();
  s.laplacian = 4.0 * std::norm(Q.f1) / (n * n);
  return s;
}

cplx harmonic_schwarzian(const HarmonicMap& m, cplx z, Chart chart) {
  const ChartJets c = chart_jets(m, z, chart);
  const Jet3& H = c.lead;
  const Jet3& Q = c.dil;
  const double n = 1.0 + std::norm(Q.f0);
  const cplx qq = Q.f1 * std::conj(Q.f0) / n;
  return classical_schwarzian(H) + 2.0 * std::conj(Q.f0) / n * (Q.f2 - Q.f1 * H.f2 / H.f1) - 4.0 * qq * qq;
}

cplx harmonic_schwarzian_sigma(const HarmonicMap& m, cplx z, Chart chart) {
  const SigmaJet s = conformal_factor(m, z, chart);
  return 2.0 * (s.sigma_zz - s.sigma_z * s.sigma_z);
}

Curvature gauss_curvature(const HarmonicMap& m, cplx z, Chart chart) {
  const SigmaJet s = conformal_factor(m, z, chart);
  return {-std::exp(-2.0 * s.sigma) * s.laplacian, s.laplacian};
}

}  // namespace schwarzlift
