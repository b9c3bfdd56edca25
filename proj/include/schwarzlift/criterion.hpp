#pragma once

#include <iosfwd>
#include <vector>

#include "schwarzlift/harmonic.hpp"
#include "schwarzlift/nehari.hpp"

namespace schwarzlift {

/// Polar grid r_i = rmax i / nr (i = 1..nr), theta_j = 2 pi j / ntheta,
/// plus the origin.
struct CriterionGrid {
  int nr = 60;
  int ntheta = 60;
  double rmax = 0.95;
};

struct MarginSample {
  double r = 0.0;
  double theta = 0.0;
  cplx z{};
  /// |Sf| + e^{2 sigma} |K|
  double lhs = 0.0;
  /// 2 p(|z|)
  double rhs = 0.0;
  double margin = 0.0;
};

struct CriterionReport {
  CriterionGrid grid;
  double tol = 1e-9;
  std::vector<MarginSample> samples;
  double min_margin = 0.0;
  double max_abs_margin = 0.0;
  cplx argmin{};
  /// Points with |margin| <= tol.
  std::vector<cplx> equality_locus;
  bool pass = false;
};

/// |Sf(z)| + e^{2 sigma(z)} |K| from the generic engine.
double criterion_lhs(const HarmonicMap& m, cplx z);

/// Pass iff min_margin >= -tol. ChartError carries the offending point.
CriterionReport check_criterion(const HarmonicMap& m, const NehariFunction& p, const CriterionGrid& grid = {},
                                double tol = 1e-9);

/// CSV with header r,theta,margin.
void write_margin_csv(std::ostream& os, const CriterionReport& report);

/// |1 - z^2|^2 / (1 - |z|^2)^2 minus
/// |1 - 2c^2 (1 + c^2 conj F^2) / ((1 + c^2 F^2)(1 + c^2 |F|^2)^2)| + 2c^2 / (1 + c^2 |F|^2)^2.
/// DomainError when 1 + c^2 F^2 vanishes.
double example2_reduced_margin(const AnalyticFn& F, double c, cplx z);

/// Both arcs of |1 - z^2| / (1 - |z|^2) = sqrt(1 + t^2): circles centred at
/// +-i/t with radius sqrt(1 + t^2)/t, clipped to the disk.
std::vector<cplx> level_arc_points(double t, int n);

struct LevelArcSweep {
  double t = 0.0;
  double min_margin = 0.0;
  cplx argmin{};
  /// Largest deviation of the sampled points from the level value.
  double level_defect = 0.0;
};

LevelArcSweep level_arc_sweep(const AnalyticFn& F, double c, double t, int n = 2001);

/// Accepts c when every level sweep for t in {0.25, 0.5, 1, 2, 4} stays
/// positive.
bool probe_example2_c(const AnalyticFn& F, double c);

}  // namespace schwarzlift
