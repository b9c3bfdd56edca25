#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "schwarzlift/harmonic.hpp"

namespace schwarzlift {

struct ScanOptions {
  int n = 20000;
  double rmax = 0.999;
  /// Minimum parameter separation of a reported pair.
  double sep = 0.1;
  /// Candidate clusters refined by Levenberg-Marquardt.
  int max_refine = 32;
};

struct ScanPair {
  cplx z1{};
  cplx z2{};
  /// Euclidean distance of the lifted points.
  double distance = 0.0;
  /// 0.25 sep min(e^sigma(z1), e^sigma(z2)).
  double threshold = 0.0;
  bool interior = false;
};

struct ScanReport {
  ScanOptions options;
  std::size_t samples = 0;
  /// Sample pairs with separation >= sep and distance <= threshold.
  std::size_t candidates = 0;
  std::vector<ScanPair> refined;
  std::vector<ScanPair> interior_collisions;
  /// Closest refined pair with a point on |z| = rmax.
  std::optional<ScanPair> nearest_boundary;
  bool pass = false;
};

/// Quasi-uniform samples of |z| <= rmax: a Vogel spiral plus a ring at rmax.
std::vector<cplx> scan_samples(int n, double rmax);

/// Injectivity audit of the lift. Candidate pairs come from a multi-level
/// spatial hash; the best clusters are refined by minimizing the image
/// distance over |z| <= rmax. A refined pair with vanishing distance and
/// both points inside counts as an interior collision.
ScanReport univalence_scan(const HarmonicMap& m, const ScanOptions& opts = {});

struct BoundaryCutSequence {
  std::vector<ScanReport> reports;
  /// Image distances of the nearest boundary pairs shrink along the sequence.
  bool shrinking = false;
  std::optional<ScanPair> limit_pair;
};

/// Scans at each rmax in turn and tracks the nearest boundary pair.
BoundaryCutSequence boundary_cut_sequence(const HarmonicMap& m, const std::vector<double>& radii = {0.99, 0.999, 0.9999},
                                          ScanOptions opts = {});

}  // namespace schwarzlift
