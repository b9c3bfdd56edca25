#pragma once

#include <optional>

#include "schwarzlift/analytic.hpp"

namespace schwarzlift {

/// f = h + conj(g) with dilatation g'/h' = q^2. `q_inv` (1/q) is used by the
/// g-chart; when absent it is built as 1/q.
struct HarmonicMap {
  AnalyticFn h;
  AnalyticFn g;
  AnalyticFn q;
  AnalyticFn q_inv;
  cplx z0{};

  /// Builds the map and audits |g' - q^2 h'| <= 1e-9 (|g'| + |q^2 h'|) at
  /// 100 pseudo-random disk points. Throws ParamError on failure.
  static HarmonicMap make(AnalyticFn h, AnalyticFn g, AnalyticFn q, cplx z0 = 0.0,
                          std::optional<AnalyticFn> q_inv = std::nullopt, bool audit = true);

  /// Analytic map h with g = q = 0.
  static HarmonicMap analytic(AnalyticFn h, cplx z0 = 0.0);

  cplx value(cplx z) const;
  /// Largest relative dilatation defect seen by the audit.
  double audit_defect(int points = 100, double radius = 0.95) const;
};

enum class Chart { Auto, H, G };

/// Jets of the active chart: `lead` is h (or g), `dil` is q (or 1/q).
struct ChartJets {
  Jet3 h;
  Jet3 g;
  Jet3 lead;
  Jet3 dil;
  bool swapped = false;
};

/// Throws ChartError when |h'| and |g'| both vanish, or when the requested
/// chart is degenerate.
ChartJets chart_jets(const HarmonicMap& m, cplx z, Chart chart = Chart::Auto);

struct SigmaJet {
  double sigma = 0.0;
  cplx sigma_z{};
  cplx sigma_zz{};
  double sigma_y = 0.0;
  double sigma_x = 0.0;
  /// Laplacian of sigma; equals e^{2 sigma} |K|.
  double laplacian = 0.0;
  bool swapped = false;
};

SigmaJet conformal_factor(const HarmonicMap& m, cplx z, Chart chart = Chart::Auto);

/// Harmonic Schwarzian from the h, q expansion.
cplx harmonic_schwarzian(const HarmonicMap& m, cplx z, Chart chart = Chart::Auto);
/// Harmonic Schwarzian as 2 (sigma_zz - sigma_z^2).
cplx harmonic_schwarzian_sigma(const HarmonicMap& m, cplx z, Chart chart = Chart::Auto);

struct Curvature {
  double K = 0.0;
  /// e^{2 sigma} |K|.
  double scaled = 0.0;
};

Curvature gauss_curvature(const HarmonicMap& m, cplx z, Chart chart = Chart::Auto);

}  // namespace schwarzlift
