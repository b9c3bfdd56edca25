#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "schwarzlift/harmonic.hpp"

namespace schwarzlift {

enum class Family { CatenoidExp, StripCatenoid, Hille };

/// A catalogued map with its closed-form Schwarzian, conformal factor and
/// curvature term where known.
struct ExampleMap {
  Family family = Family::CatenoidExp;
  std::string name;
  HarmonicMap map;
  double c = 0.0;
  double t = 1.0;
  double epsilon = 0.0;
  /// Catalogue key of the weight the family is built for.
  std::string p_kind;
  /// Inner analytic function F of the strip and Hille families.
  std::optional<AnalyticFn> F;

  std::function<cplx(cplx)> closed_schwarzian;
  std::function<double(cplx)> closed_conformal;
  /// e^{2 sigma} |K|.
  std::function<double(cplx)> closed_curvature;

  /// Largest relative gap between closed forms and the generic engine over
  /// pseudo-random points of |z| <= radius.
  double closed_form_defect(int points = 200, double radius = 0.95) const;
};

/// c e^{t pi z} + conj(e^{-t pi z} / c). Requires c > 0, t > 0.
ExampleMap catenoid_exp(double c, double t = 1.0);

/// G + conj(1/G), G = (cF + i)/(cF - i), with F the extremal of p_kind:
/// nehari2 -> (1/2) log((1+z)/(1-z)), pi2over4 -> (2/pi) tan(pi z / 2),
/// two_over_1mx2 -> integral of (1 - z^2)^-2. Throws ParamError when a
/// probe finds 1 + c^2 F^2 near zero in the disk.
ExampleMap strip_catenoid(const std::string& p_kind, double c = 0.05);

/// Same construction with F = ((1+z)/(1-z))^{i eps}; needs c < e^{-eps pi/2}.
ExampleMap hille(double epsilon, double c);

/// Family by name: catenoid_exp, strip_catenoid, hille.
ExampleMap make_example(const std::string& family, double c, double t, double epsilon, const std::string& p_kind);

/// The extremal F of a catalogue key as an analytic function.
AnalyticFn extremal_analytic(const std::string& p_kind);

struct CatalogueEntry {
  std::string family;
  std::string parameters;
  std::string description;
};
std::vector<CatalogueEntry> example_catalogue();

}  // namespace schwarzlift
