#include "schwarzlift/examples.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <tuple>

#include "schwarzlift/error.hpp"

namespace schwarzlift {

namespace {

const cplx I(0.0, 1.0);

double rel_gap(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Closed forms of G + conj(1/G) in terms of F.
void attach_strip_forms(ExampleMap& ex, const AnalyticFn& F, double c) {
  const double c2 = c * c;
  ex.closed_schwarzian = [F, c2](cplx z) {
    const Jet3 j = F.eval(z);
    const cplx f = j.f0;
    const double n = 1.0 + c2 * std::norm(f);
    return classical_schwarzian(j) -
           4.0 * c2 * (1.0 + c2 * std::conj(f) * std::conj(f)) * j.f1 * j.f1 / ((1.0 + c2 * f * f) * n * n);
  };
  ex.closed_conformal = [F, c, c2](cplx z) {
    const Jet3 j = F.eval(z);
    return 4.0 * c * std::abs(j.f1) * (1.0 + c2 * std::norm(j.f0)) / std::norm(1.0 + c2 * j.f0 * j.f0);
  };
  ex.closed_curvature = [F, c2](cplx z) {
    const Jet3 j = F.eval(z);
    const double n = 1.0 + c2 * std::norm(j.f0);
    return 4.0 * c2 * std::norm(j.f1) / (n * n);
  };
}

ExampleMap strip_from(const AnalyticFn& F, double c, const std::string& p_kind) {
  ExampleMap ex;
  const AnalyticFn G = (c * F + I) / (c * F - I);
  const AnalyticFn one = AnalyticFn::constant(1.0);
  ex.map = HarmonicMap::make(G, one / G, I / G, 0.0, -I * G);
  ex.c = c;
  ex.F = F;
  ex.p_kind = p_kind;
  attach_strip_forms(ex, F, c);
  return ex;
}

struct ExclusionProbe {
  double min_value = std::numeric_limits<double>::infinity();
  std::optional<cplx> zero;
};

// Minimum of |1 + c^2 F^2| over a polar grid of |z| <= 0.999. Grid points
// whose Newton step is shorter than 0.02 seed a Newton search for a zero
// inside the disk.
ExclusionProbe exclusion_probe(const AnalyticFn& F, double c) {
  ExclusionProbe out;
  const double c2 = c * c;
  auto step = [&](cplx z) {
    const Jet3 j = F.eval(z);
    const cplx v = 1.0 + c2 * j.f0 * j.f0;
    return std::pair<cplx, cplx>(v, v / (2.0 * c2 * j.f0 * j.f1));
  };
  for (int i = 1; i <= 200 && !out.zero; ++i) {
    const double r = 0.999 * i / 200.0;
    for (int j = 0; j < 256 && !out.zero; ++j) {
      cplx z = std::polar(r, 2.0 * kPi * j / 256.0);
      try {
        auto [v, dz] = step(z);
        out.min_value = std::min(out.min_value, std::abs(v));
        if (!(std::abs(dz) < 0.02)) continue;
        for (int it = 0; it < 40 && std::abs(z) < 1.0; ++it) {
          z -= dz;
          std::tie(v, dz) = step(z);
          if (std::abs(v) < 1e-12) {
            if (std::abs(z) < 1.0) out.zero = z;
            break;
          }
        }
      } catch (const DomainError&) {
      }
    }
  }
  return out;
}

}  // namespace

double ExampleMap::closed_form_defect(int points, double radius) const {
  std::mt19937_64 rng(0xca7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < points; ++k) {
    const cplx z = std::polar(radius * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
    const SigmaJet s = conformal_factor(map, z);
    if (closed_schwarzian) worst = std::max(worst, rel_gap(harmonic_schwarzian(map, z), closed_schwarzian(z)));
    if (closed_conformal) worst = std::max(worst, rel_gap(std::exp(s.sigma), closed_conformal(z)));
    if (closed_curvature) worst = std::max(worst, rel_gap(s.laplacian, closed_curvature(z)));
  }
  return worst;
}

ExampleMap catenoid_exp(double c, double t) {
  if (!(c > 0.0)) throw ParamError("catenoid_exp needs c > 0");
  if (!(t > 0.0)) throw ParamError("catenoid_exp needs t > 0");
  const AnalyticFn z;
  const double k = t * kPi;
  ExampleMap ex;
  ex.family = Family::CatenoidExp;
  std::ostringstream os;
  os << "catenoid_exp(c=" << c << ", t=" << t << ")";
  ex.name = os.str();
  ex.c = c;
  ex.t = t;
  ex.p_kind = "pi2over4";
  const AnalyticFn up = exp(k * z);
  const AnalyticFn down = exp(-k * z);
  ex.map = HarmonicMap::make(c * up, down / cplx(c), (I / c) * down, 0.0, (-I * c) * up);
  ex.closed_conformal = [c, k](cplx z) { return k * (c * std::exp(k * z.real()) + std::exp(-k * z.real()) / c); };
  ex.closed_curvature = [c, k](cplx z) {
    const double es = k * (c * std::exp(k * z.real()) + std::exp(-k * z.real()) / c);
    return 4.0 * k * k * k * k / (es * es);
  };
  ex.closed_schwarzian = [c, k](cplx z) {
    const double es = k * (c * std::exp(k * z.real()) + std::exp(-k * z.real()) / c);
    return cplx(-k * k / 2.0 + 4.0 * k * k * k * k / (es * es), 0.0);
  };
  return ex;
}

AnalyticFn extremal_analytic(const std::string& p_kind) {
  const AnalyticFn z;
  if (p_kind == "nehari2") return atanh(z);
  if (p_kind == "pi2over4") return (2.0 / kPi) * tan((kPi / 2.0) * z);
  if (p_kind == "two_over_1mx2") return z / (2.0 * (1.0 - z * z)) + 0.5 * atanh(z);
  throw ParamError("no analytic extremal for '" + p_kind + "'");
}

ExampleMap strip_catenoid(const std::string& p_kind, double c) {
  if (!(c > 0.0)) throw ParamError("strip_catenoid needs c > 0");
  const AnalyticFn F = extremal_analytic(p_kind);
  const ExclusionProbe probe = exclusion_probe(F, c);
  if (probe.zero || !(probe.min_value > 1e-3)) {
    std::ostringstream os;
    os << "strip_catenoid: 1 + c^2 F^2 ";
    if (probe.zero) os << "vanishes at z = " << *probe.zero; else os << "comes within " << probe.min_value << " of zero";
    os << " in the disk; decrease c";
    throw ParamError(os.str());
  }
  ExampleMap ex = strip_from(F, c, p_kind);
  ex.family = Family::StripCatenoid;
  std::ostringstream os;
  os << "strip_catenoid(p=" << p_kind << ", c=" << c << ")";
  ex.name = os.str();
  return ex;
}

ExampleMap hille(double epsilon, double c) {
  if (!(epsilon > 0.0)) throw ParamError("hille needs eps > 0");
  if (!(c > 0.0 && c < std::exp(-epsilon * kPi / 2.0))) {
    std::ostringstream os;
    os << "hille needs 0 < c < e^{-eps pi/2} = " << std::exp(-epsilon * kPi / 2.0);
    throw ParamError(os.str());
  }
  const AnalyticFn z;
  const AnalyticFn F = exp((I * epsilon) * log((1.0 + z) / (1.0 - z)));
  ExampleMap ex = strip_from(F, c, "nehari2");
  ex.family = Family::Hille;
  ex.epsilon = epsilon;
  std::ostringstream os;
  os << "hille(eps=" << epsilon << ", c=" << c << ")";
  ex.name = os.str();
  return ex;
}

ExampleMap make_example(const std::string& family, double c, double t, double epsilon, const std::string& p_kind) {
  if (family == "catenoid_exp") return catenoid_exp(c, t);
  if (family == "strip_catenoid") return strip_catenoid(p_kind, c);
  if (family == "hille") return hille(epsilon, c);
  throw ParamError("unknown example family '" + family + "'");
}

std::vector<CatalogueEntry> example_catalogue() {
  return {
      {"catenoid_exp", "c > 0, t > 0 (default c = 60, t = 1)",
       "c e^{t pi z} + conj(e^{-t pi z}/c); lifts onto a catenoid. With t = 1 and c > (1+sqrt 2) e^pi the "
       "criterion for pi^2/4 holds with equality everywhere; any t > 1 violates it."},
      {"strip_catenoid", "p in {nehari2, pi2over4, two_over_1mx2}, small c > 0 (default 0.05)",
       "G + conj(1/G) with G = (cF + i)/(cF - i) and F the extremal of p; for nehari2 F = (1/2) log((1+z)/(1-z))."},
      {"hille", "eps > 0, 0 < c < e^{-eps pi/2}",
       "Same construction with F = ((1+z)/(1-z))^{i eps}; satisfies the bound with 2 replaced by 2 + delta "
       "while F takes the value 1 infinitely often."},
  };
}

}  // namespace schwarzlift
