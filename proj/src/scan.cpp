#include "schwarzlift/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <unordered_map>

#include <Eigen/Dense>

#include "schwarzlift/error.hpp"
#include "schwarzlift/lift.hpp"
#include "schwarzlift/parallel.hpp"

namespace schwarzlift {

namespace {

const cplx I(0.0, 1.0);

struct CellKey {
  std::int64_t x, y, z;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = static_cast<std::uint64_t>(k.x) * 0x9e3779b97f4a7c15ull;
    h ^= static_cast<std::uint64_t>(k.y) * 0xc2b2ae3d27d4eb4full + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(k.z) * 0x165667b19e3779f9ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

using Grid = std::unordered_map<CellKey, std::vector<std::uint32_t>, CellHash>;

CellKey cell_of(const Vec3& p, double size) {
  return {static_cast<std::int64_t>(std::floor(p.x() / size)), static_cast<std::int64_t>(std::floor(p.y() / size)),
          static_cast<std::int64_t>(std::floor(p.z() / size))};
}

cplx clamp_disk(cplx z, double rmax) {
  const double a = std::abs(z);
  return a > rmax ? z * (rmax / a) : z;
}

struct Refiner {
  const HarmonicMap& m;
  double rmax;
  double sep;

  Vec3 image(cplx z) const { return lift_point(m, z).vec(); }

  ScanPair run(cplx z1, cplx z2) const {
    Vec3 r = image(z1) - image(z2);
    double cost = r.squaredNorm();
    double mu = 1e-3;
    for (int it = 0; it < 200 && cost > 0.0; ++it) {
      Eigen::Matrix<double, 3, 4> J;
      J.col(0) = lift_derivatives(m, z1, 1.0).d1;
      J.col(1) = lift_derivatives(m, z1, I).d1;
      J.col(2) = -lift_derivatives(m, z2, 1.0).d1;
      J.col(3) = -lift_derivatives(m, z2, I).d1;
      const Eigen::Matrix4d JtJ = J.transpose() * J;
      const Eigen::Vector4d g = J.transpose() * r;
      bool accepted = false;
      for (int tries = 0; tries < 30; ++tries) {
        Eigen::Matrix4d A = JtJ;
        const double damp = mu * std::max(JtJ.diagonal().maxCoeff(), 1e-300);
        A.diagonal().array() += damp;
        const Eigen::Vector4d step = A.ldlt().solve(-g);
        const cplx n1 = clamp_disk(z1 + cplx(step[0], step[1]), rmax);
        const cplx n2 = clamp_disk(z2 + cplx(step[2], step[3]), rmax);
        if (std::abs(n1 - n2) >= 0.5 * sep) {
          const Vec3 nr = image(n1) - image(n2);
          const double nc = nr.squaredNorm();
          if (nc < cost) {
            const double gain = cost - nc;
            z1 = n1;
            z2 = n2;
            r = nr;
            cost = nc;
            mu = std::max(mu / 3.0, 1e-12);
            accepted = true;
            if (gain <= 1e-15 * cost) it = 1 << 20;
            break;
          }
        }
        mu *= 4.0;
      }
      if (!accepted) break;
    }
    ScanPair out;
    out.z1 = z1;
    out.z2 = z2;
    out.distance = std::sqrt(cost);
    const double e1 = std::exp(conformal_factor(m, z1).sigma);
    const double e2 = std::exp(conformal_factor(m, z2).sigma);
    out.threshold = 0.25 * sep * std::min(e1, e2);
    const double inner = rmax * (1.0 - 1e-9);
    const double scale = std::max({1.0, e1, e2});
    out.interior = out.distance <= 1e-8 * scale && std::abs(z1) < inner && std::abs(z2) < inner;
    return out;
  }
};

}  // namespace

std::vector<cplx> scan_samples(int n, double rmax) {
  if (n < 16 || !(rmax > 0.0 && rmax < 1.0)) throw ParamError("scan needs n >= 16 and 0 < rmax < 1");
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  std::vector<cplx> pts;
  pts.reserve(n + 4 * static_cast<std::size_t>(std::sqrt(n)) + 8);
  for (int k = 0; k < n; ++k) {
    const double r = rmax * std::sqrt((k + 0.5) / n);
    pts.push_back(std::polar(r, golden * k));
  }
  const int ring = static_cast<int>(std::ceil(2.0 * std::sqrt(kPi * n)));
  for (int k = 0; k < ring; ++k) pts.push_back(std::polar(rmax, 2.0 * kPi * (k + 0.5) / ring));
  return pts;
}

ScanReport univalence_scan(const HarmonicMap& m, const ScanOptions& opts) {
  if (!(opts.sep > 0.0)) throw ParamError("scan separation must be positive");
  ScanReport rep;
  rep.options = opts;
  const std::vector<cplx> pts = scan_samples(opts.n, opts.rmax);
  const std::size_t n = pts.size();
  rep.samples = n;

  std::vector<Vec3> img(n);
  std::vector<double> delta(n);
  std::vector<int> level(n);
  parallel_for(n, [&](std::size_t k) {
    img[k] = lift_point(m, pts[k]).vec();
    delta[k] = 0.25 * opts.sep * std::exp(conformal_factor(m, pts[k]).sigma);
    level[k] = static_cast<int>(std::floor(std::log2(std::max(delta[k], 1e-300))));
  });

  // One grid per dyadic threshold level; the cell size of level L exceeds
  // every threshold of that level, so the 27 neighbouring cells suffice.
  std::map<int, Grid> grids;
  for (std::size_t k = 0; k < n; ++k) {
    const double size = std::ldexp(1.0, level[k] + 1);
    grids[level[k]][cell_of(img[k], size)].push_back(static_cast<std::uint32_t>(k));
  }

  struct Cand {
    std::uint32_t i, j;
    double ratio;
  };
  std::vector<std::vector<Cand>> found(n);
  parallel_for(n, [&](std::size_t i) {
    for (auto it = grids.lower_bound(level[i]); it != grids.end(); ++it) {
      const double size = std::ldexp(1.0, it->first + 1);
      const CellKey c = cell_of(img[i], size);
      for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy)
          for (int dz = -1; dz <= 1; ++dz) {
            const auto cell = it->second.find({c.x + dx, c.y + dy, c.z + dz});
            if (cell == it->second.end()) continue;
            for (std::uint32_t j : cell->second) {
              if (level[j] == level[i] && j <= i) continue;
              const double thr = std::min(delta[i], delta[j]);
              const double d = (img[i] - img[j]).norm();
              if (d > thr || std::abs(pts[i] - pts[j]) < opts.sep) continue;
              found[i].push_back({static_cast<std::uint32_t>(i), j, d / thr});
            }
          }
    }
  });
  std::vector<Cand> cands;
  for (auto& f : found) cands.insert(cands.end(), f.begin(), f.end());
  rep.candidates = cands.size();
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return a.ratio != b.ratio ? a.ratio < b.ratio : (a.i != b.i ? a.i < b.i : a.j < b.j);
  });

  std::vector<std::pair<cplx, cplx>> seeds;
  const double cluster = 0.5 * opts.sep;
  for (const Cand& c : cands) {
    if (static_cast<int>(seeds.size()) >= opts.max_refine) break;
    const cplx a = pts[c.i], b = pts[c.j];
    bool dup = false;
    for (const auto& [s, t] : seeds) {
      if ((std::abs(a - s) < cluster && std::abs(b - t) < cluster) ||
          (std::abs(a - t) < cluster && std::abs(b - s) < cluster)) {
        dup = true;
        break;
      }
    }
    if (!dup) seeds.emplace_back(a, b);
  }

  rep.refined.resize(seeds.size());
  const Refiner refiner{m, opts.rmax, opts.sep};
  parallel_for(seeds.size(), [&](std::size_t k) { rep.refined[k] = refiner.run(seeds[k].first, seeds[k].second); });

  const double edge = opts.rmax * (1.0 - 1e-9);
  for (const ScanPair& p : rep.refined) {
    if (p.interior) {
      rep.interior_collisions.push_back(p);
    } else if (std::abs(p.z1) >= edge || std::abs(p.z2) >= edge) {
      if (!rep.nearest_boundary || p.distance < rep.nearest_boundary->distance) rep.nearest_boundary = p;
    }
  }
  rep.pass = rep.interior_collisions.empty();
  return rep;
}

BoundaryCutSequence boundary_cut_sequence(const HarmonicMap& m, const std::vector<double>& radii, ScanOptions opts) {
  BoundaryCutSequence seq;
  seq.shrinking = true;
  double last = std::numeric_limits<double>::infinity();
  for (double r : radii) {
    opts.rmax = r;
    seq.reports.push_back(univalence_scan(m, opts));
    const auto& nb = seq.reports.back().nearest_boundary;
    if (!nb || !(nb->distance < last)) {
      seq.shrinking = false;
      if (!nb) continue;
    }
    last = nb->distance;
    seq.limit_pair = nb;
  }
  return seq;
}

}  // namespace schwarzlift
