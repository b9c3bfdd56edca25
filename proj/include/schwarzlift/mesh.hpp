#pragma once

#include <array>
#include <ostream>
#include <vector>

#include "schwarzlift/lift.hpp"

namespace schwarzlift {

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<Vec3> normals;
  std::vector<cplx> sources;
  std::vector<std::array<int, 3>> faces;
};

/// Polar grid of the disk of radius rmax: the center plus nr rings of
/// ntheta vertices. A triangle fan closes the center; ring quads are split
/// along the same diagonal. Vertex count nr * ntheta + 1.
Mesh lift_mesh(const HarmonicMap& m, int nr, int ntheta, double rmax);

void write_obj(std::ostream& os, const Mesh& mesh);
/// Binary little-endian PLY with float32 positions and normals.
void write_ply(std::ostream& os, const Mesh& mesh);

/// CSV with header x,u,v,w,speed,s1_numeric,s1_decomposition; samples too close to
/// the ends for differencing get nan in s1_numeric.
void write_curve_csv(std::ostream& os, const HarmonicMap& m, const LiftedCurve& c, cplx dir);

}  // namespace schwarzlift
