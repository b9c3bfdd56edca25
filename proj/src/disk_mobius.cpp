#include "schwarzlift/disk_mobius.hpp"

#include <cmath>
#include <sstream>

#include "schwarzlift/error.hpp"

namespace schwarzlift {

namespace {
const cplx I(0.0, 1.0);
}

cplx DiskMobius::apply(cplx z) const {
  return std::polar(1.0, theta) * (I * rho - z) / (1.0 + I * rho * z);
}

cplx DiskMobius::inverse(cplx w) const {
  const cplx u = std::polar(1.0, -theta) * w;
  return (I * rho - u) / (1.0 + I * rho * u);
}

cplx DiskMobius::derivative(cplx z) const {
  const cplx d = 1.0 + I * rho * z;
  return -std::polar(1.0, theta) * (1.0 - rho * rho) / (d * d);
}

AnalyticFn DiskMobius::as_analytic() const {
  const cplx e = std::polar(1.0, theta);
  return mobius(-e, e * I * rho, I * rho, 1.0);
}

GeodesicTransform disk_mobius_geodesic(cplx z1, cplx z2) {
  if (std::abs(z1 - z2) < 1e-14) {
    std::ostringstream os;
    os << "geodesic through coincident points " << z1 << ", " << z2;
    throw DegenerateInput(os.str());
  }
  if (std::abs(z1) >= 1.0 || std::abs(z2) >= 1.0) throw DomainError("geodesic endpoints must lie in the open disk");

  GeodesicTransform out;
  const double det = z1.real() * z2.imag() - z1.imag() * z2.real();
  const double scale = std::max(std::abs(z1), std::abs(z2));
  if (std::abs(det) <= 1e-13 * scale) {
    // Diameter: a pure rotation with rho = 0.
    const double alpha = std::arg(z2 - z1);
    out.transform = {0.0, alpha + kPi};
    out.x1 = (std::polar(1.0, -alpha) * z1).real();
    out.x2 = (std::polar(1.0, -alpha) * z2).real();
    return out;
  }
  // Center c of the circle through z1, z2 orthogonal to the unit circle:
  // 2 Re(z_k conj(c)) = 1 + |z_k|^2.
  const double r1 = 0.5 * (1.0 + std::norm(z1));
  const double r2 = 0.5 * (1.0 + std::norm(z2));
  const double cx = (r1 * z2.imag() - r2 * z1.imag()) / det;
  const double cy = (z1.real() * r2 - z2.real() * r1) / det;
  const cplx c(cx, cy);
  const double radius = std::sqrt(std::norm(c) - 1.0);
  const cplx w = c * (1.0 - radius / std::abs(c));
  out.transform = {std::abs(w), std::arg(-I * w)};
  out.x1 = out.transform.inverse(z1).real();
  out.x2 = out.transform.inverse(z2).real();
  return out;
}

}  // namespace schwarzlift
