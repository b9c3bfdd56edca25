#include "schwarzlift/criterion.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "schwarzlift/error.hpp"
#include "schwarzlift/parallel.hpp"

namespace schwarzlift {

double criterion_lhs(const HarmonicMap& m, cplx z) {
  const SigmaJet s = conformal_factor(m, z);
  return std::abs(harmonic_schwarzian(m, z)) + s.laplacian;
}

CriterionReport check_criterion(const HarmonicMap& m, const NehariFunction& p, const CriterionGrid& grid,
                                double tol) {
  if (grid.nr < 1 || grid.ntheta < 1 || !(grid.rmax > 0.0 && grid.rmax < 1.0))
    throw ParamError("criterion grid needs nr, ntheta >= 1 and 0 < rmax < 1");
  CriterionReport rep;
  rep.grid = grid;
  rep.tol = tol;
  const std::size_t n = 1 + static_cast<std::size_t>(grid.nr) * grid.ntheta;
  rep.samples.resize(n);
  parallel_for(n, [&](std::size_t k) {
    MarginSample s;
    if (k > 0) {
      const std::size_t i = (k - 1) / grid.ntheta + 1;
      const std::size_t j = (k - 1) % grid.ntheta;
      s.r = grid.rmax * static_cast<double>(i) / grid.nr;
      s.theta = 2.0 * kPi * static_cast<double>(j) / grid.ntheta;
      s.z = std::polar(s.r, s.theta);
    }
    try {
      s.lhs = criterion_lhs(m, s.z);
    } catch (const ChartError& e) {
      std::ostringstream os;
      os.precision(17);
      os << e.what() << " (criterion grid point z = " << s.z << ")";
      throw ChartError(os.str());
    }
    s.rhs = 2.0 * p(s.r);
    s.margin = s.rhs - s.lhs;
    rep.samples[k] = s;
  });
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& s : rep.samples) {
    if (s.margin < rep.min_margin) {
      rep.min_margin = s.margin;
      rep.argmin = s.z;
    }
    rep.max_abs_margin = std::max(rep.max_abs_margin, std::abs(s.margin));
    if (std::abs(s.margin) <= tol) rep.equality_locus.push_back(s.z);
  }
  rep.pass = rep.min_margin >= -tol;
  return rep;
}

void write_margin_csv(std::ostream& os, const CriterionReport& report) {
  os << "r,theta,margin\n";
  char buf[96];
  for (const auto& s : report.samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.r, s.theta, s.margin);
    os << buf;
  }
}

double example2_reduced_margin(const AnalyticFn& F, double c, cplx z) {
  const cplx f = F.value(z);
  const double c2 = c * c;
  const cplx d = 1.0 + c2 * f * f;
  if (std::abs(d) < 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "1 + c^2 F^2 vanishes at z = " << z;
    throw DomainError(os.str());
  }
  const double n = 1.0 + c2 * std::norm(f);
  const double lhs = std::abs(1.0 - 2.0 * c2 * (1.0 + c2 * std::conj(f) * std::conj(f)) / (d * n * n)) +
                     2.0 * c2 / (n * n);
  const double q = 1.0 - std::norm(z);
  return std::norm(1.0 - z * z) / (q * q) - lhs;
}

std::vector<cplx> level_arc_points(double t, int n) {
  if (!(t > 0.0) || n < 2) throw ParamError("level arcs need t > 0 and n >= 2");
  const double s = std::sqrt(1.0 + t * t);
  const double a0 = std::atan(1.0 / t);
  const double a1 = kPi - a0;
  std::vector<cplx> pts;
  pts.reserve(2 * n);
  for (int sign : {1, -1}) {
    const cplx centre(0.0, -sign / t);
    for (int k = 1; k <= n; ++k) {
      const double a = a0 + (a1 - a0) * k / (n + 1.0);
      cplx z = centre + (s / t) * cplx(std::cos(a), sign * std::sin(a));
      pts.push_back(z);
    }
  }
  return pts;
}

LevelArcSweep level_arc_sweep(const AnalyticFn& F, double c, double t, int n) {
  LevelArcSweep out;
  out.t = t;
  out.min_margin = std::numeric_limits<double>::infinity();
  const double level = std::sqrt(1.0 + t * t);
  for (cplx z : level_arc_points(t, n)) {
    if (std::abs(z) >= 1.0) continue;
    out.level_defect =
        std::max(out.level_defect, std::abs(std::abs(1.0 - z * z) / (1.0 - std::norm(z)) - level) / level);
    const double mg = example2_reduced_margin(F, c, z);
    if (mg < out.min_margin) {
      out.min_margin = mg;
      out.argmin = z;
    }
  }
  return out;
}

bool probe_example2_c(const AnalyticFn& F, double c) {
  for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    try {
      if (!(level_arc_sweep(F, c, t, 401).min_margin > 0.0)) return false;
    } catch (const DomainError&) {
      return false;
    }
  }
  return true;
}

}  // namespace schwarzlift
