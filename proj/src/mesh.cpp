#include "schwarzlift/mesh.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>

#include "schwarzlift/error.hpp"
#include "schwarzlift/parallel.hpp"

namespace schwarzlift {

Mesh lift_mesh(const HarmonicMap& m, int nr, int ntheta, double rmax) {
  if (!(rmax > 0.0 && rmax < 1.0)) throw DomainError("mesh radius must lie in (0, 1)");
  if (nr < 1 || ntheta < 3) throw DegenerateInput("mesh needs nr >= 1 and ntheta >= 3");
  Mesh mesh;
  const std::size_t count = static_cast<std::size_t>(nr) * static_cast<std::size_t>(ntheta) + 1;
  mesh.sources.resize(count);
  mesh.sources[0] = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double r = rmax * (i + 1) / nr;
    for (int j = 0; j < ntheta; ++j) {
      mesh.sources[1 + static_cast<std::size_t>(i) * ntheta + j] = std::polar(r, 2.0 * kPi * j / ntheta);
    }
  }
  mesh.vertices.resize(count);
  mesh.normals.resize(count);
  parallel_for(count, [&](std::size_t k) {
    mesh.vertices[k] = lift_point(m, mesh.sources[k]).vec();
    mesh.normals[k] = surface_normal(m, mesh.sources[k]);
  });
  auto idx = [&](int ring, int j) { return 1 + ring * ntheta + (j % ntheta); };
  for (int j = 0; j < ntheta; ++j) mesh.faces.push_back({0, idx(0, j), idx(0, j + 1)});
  for (int i = 0; i + 1 < nr; ++i) {
    for (int j = 0; j < ntheta; ++j) {
      const int a = idx(i, j), b = idx(i, j + 1), c = idx(i + 1, j), d = idx(i + 1, j + 1);
      mesh.faces.push_back({a, c, d});
      mesh.faces.push_back({a, d, b});
    }
  }
  return mesh;
}

void write_obj(std::ostream& os, const Mesh& mesh) {
  os.precision(17);
  for (const auto& v : mesh.vertices) os << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& n : mesh.normals) os << "vn " << n.x() << ' ' << n.y() << ' ' << n.z() << '\n';
  for (const auto& f : mesh.faces) {
    os << 'f';
    for (int k : f) os << ' ' << k + 1 << "//" << k + 1;
    os << '\n';
  }
}

namespace {

template <typename T>
void put_le(std::ostream& os, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  os.write(bytes, sizeof(T));
}

}  // namespace

void write_ply(std::ostream& os, const Mesh& mesh) {
  os << "ply\nformat binary_little_endian 1.0\n"
     << "element vertex " << mesh.vertices.size() << '\n'
     << "property float x\nproperty float y\nproperty float z\n"
     << "property float nx\nproperty float ny\nproperty float nz\n"
     << "element face " << mesh.faces.size() << '\n'
     << "property list uchar int vertex_indices\nend_header\n";
  for (std::size_t k = 0; k < mesh.vertices.size(); ++k) {
    for (int c = 0; c < 3; ++c) put_le(os, static_cast<float>(mesh.vertices[k][c]));
    for (int c = 0; c < 3; ++c) put_le(os, static_cast<float>(mesh.normals[k][c]));
  }
  for (const auto& f : mesh.faces) {
    put_le(os, static_cast<std::uint8_t>(3));
    for (int k : f) put_le(os, static_cast<std::int32_t>(k));
  }
}

void write_curve_csv(std::ostream& os, const HarmonicMap& m, const LiftedCurve& c, cplx dir) {
  os.precision(17);
  os << "x,u,v,w,speed,s1_numeric,s1_decomposition\n";
  for (std::size_t k = 0; k < c.size(); ++k) {
    const CurveSample& s = c.samples[k];
    double numeric = std::numeric_limits<double>::quiet_NaN();
    if (k >= 3 && k + 4 <= c.size()) numeric = ahlfors_s1_numeric(c, k);
    const double decomposed = ahlfors_s1_lemma1(m, s.source, dir).s1;
    os << s.x << ',' << s.point.x() << ',' << s.point.y() << ',' << s.point.z() << ',' << s.speed << ','
       << numeric << ',' << decomposed << '\n';
  }
}

}  // namespace schwarzlift
