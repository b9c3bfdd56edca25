#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "schwarzlift/error.hpp"
#include "schwarzlift/examples.hpp"
#include "schwarzlift/lift.hpp"
#include "schwarzlift/mesh.hpp"
#include "schwarzlift/nehari.hpp"

using namespace schwarzlift;
using oracle::Rng;

namespace {

const cplx I(0.0, 1.0);

HarmonicMap twisted_map() {
  const AnalyticFn z;
  const AnalyticFn q = 0.4 + 0.3 * z;
  const AnalyticFn hp = exp(0.3 * z);
  return HarmonicMap::make(integral(hp, 0.0), integral(q * q * hp, 0.0), q);
}

Vec3 tight_lift(const HarmonicMap& m, cplx z) {
  QuadratureOptions o;
  o.abs_tol = 1e-15;
  o.rel_tol = 1e-15;
  o.max_subdivisions = 1 << 14;
  return lift_point(m, z, o).vec();
}

// 4th-order central partial of the lift along d.
Vec3 fd_partial(const HarmonicMap& m, cplx z, cplx d, double h) {
  return (-tight_lift(m, z + 2.0 * h * d) + 8.0 * tight_lift(m, z + h * d) - 8.0 * tight_lift(m, z - h * d) +
          tight_lift(m, z - 2.0 * h * d)) /
         (12.0 * h);
}

LiftedCurve sampled_curve(const std::function<Vec3(double)>& phi, double a, double b, int n) {
  std::vector<double> xs(n);
  std::vector<Vec3> pts(n);
  for (int k = 0; k < n; ++k) {
    xs[k] = a + (b - a) * k / (n - 1);
    pts[k] = phi(xs[k]);
  }
  return curve_from_points(xs, pts);
}

}  // namespace

TEST_SUITE("lift") {

TEST_CASE("lift at the base point") {
  const HarmonicMap m = twisted_map();
  const SurfacePoint s = lift_point(m, m.z0);
  const cplx f = m.value(m.z0);
  CHECK(s.u == doctest::Approx(f.real()));
  CHECK(s.v == doctest::Approx(f.imag()));
  CHECK(s.w == 0.0);
}

TEST_CASE("catenoid parametrization") {
  const double c = 60.0;
  const ExampleMap ex = catenoid_exp(c);
  Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    const cplx z = rng.disk(0.99);
    const double x = z.real(), y = z.imag();
    const double rho = c * std::exp(kPi * x) + std::exp(-kPi * x) / c;
    const SurfacePoint s = lift_point(ex.map, z);
    CHECK(s.u == doctest::Approx(rho * std::cos(kPi * y)).epsilon(1e-12).scale(rho));
    CHECK(s.v == doctest::Approx(rho * std::sin(kPi * y)).epsilon(1e-12).scale(rho));
    CHECK(s.w == doctest::Approx(2.0 * kPi * x).epsilon(1e-10));
  }
  const SurfacePoint a = lift_point(ex.map, I);
  const SurfacePoint b = lift_point(ex.map, -I);
  CHECK(std::abs(a.u + (c + 1.0 / c)) <= 1e-9);
  CHECK(std::abs(b.u + (c + 1.0 / c)) <= 1e-9);
  CHECK((a.vec() - b.vec()).norm() <= 1e-9);
}

TEST_CASE("height is path independent") {
  const HarmonicMap m = twisted_map();
  Rng rng(6);
  for (int k = 0; k < 30; ++k) {
    const cplx z = rng.disk(0.95), via = rng.disk(0.9);
    CHECK(std::abs(lift_height(m, z) - lift_height_via(m, via, z)) <= 1e-9);
  }
}

TEST_CASE("surface normal") {
  SUBCASE("flat lift") {
    const HarmonicMap m = HarmonicMap::analytic(AnalyticFn());
    const Vec3 n = surface_normal(m, cplx(0.2, 0.3));
    CHECK(std::abs(std::abs(n.z()) - 1.0) < 1e-15);
  }
  SUBCASE("catenoid at the origin") {
    const double c = 60.0;
    const ExampleMap ex = catenoid_exp(c);
    const Vec3 n = surface_normal(ex.map, 0.0);
    const double q2 = 1.0 / (c * c);
    CHECK(n.x() < 0.0);
    CHECK(std::abs(n.y()) < 1e-15);
    CHECK(n.z() == doctest::Approx((1.0 - q2) / (1.0 + q2)).epsilon(1e-14));
    const Vec3 fd = fd_partial(ex.map, 0.0, 1.0, 1e-3).cross(fd_partial(ex.map, 0.0, I, 1e-3)).normalized();
    CHECK((fd - n).norm() <= 1e-8);
  }
  SUBCASE("orthogonality and the finite-difference oracle") {
    const HarmonicMap m = twisted_map();
    Rng rng(7);
    for (int k = 0; k < 20; ++k) {
      const cplx z = rng.disk(0.85);
      const Vec3 n = surface_normal(m, z);
      CHECK(n.norm() == doctest::Approx(1.0).epsilon(1e-14));
      const Vec3 xx = lift_derivatives(m, z, 1.0).d1, xy = lift_derivatives(m, z, I).d1;
      CHECK(std::abs(n.dot(xx)) <= 1e-9 * xx.norm());
      CHECK(std::abs(n.dot(xy)) <= 1e-9 * xy.norm());
      const Vec3 fd = fd_partial(m, z, 1.0, 1e-3).cross(fd_partial(m, z, I, 1e-3)).normalized();
      CHECK((fd - n).norm() <= 1e-8);
    }
  }
}

TEST_CASE("numeric S1 of model curves") {
  SUBCASE("straight line") {
    const LiftedCurve c = sampled_curve([](double x) { return Vec3(1.0 + 2.0 * x, -x, 0.5 * x); }, -1, 1, 201);
    CHECK(std::abs(ahlfors_s1_numeric(c, 100)) < 1e-10);
  }
  SUBCASE("unit circle by arclength") {
    const LiftedCurve c = sampled_curve([](double s) { return Vec3(std::cos(s), std::sin(s), 0.0); }, 0, 2, 401);
    for (std::size_t k : {10u, 200u, 390u}) CHECK(ahlfors_s1_numeric(c, k) == doctest::Approx(0.5).epsilon(1e-8));
  }
  SUBCASE("extremal curve of (1-x^2)^-2") {
    const LiftedCurve c = sampled_curve([](double x) { return Vec3(std::atanh(x), 0.0, 0.0); }, -0.9, 0.9, 3601);
    for (std::size_t k = 100; k < 3500; k += 400) {
      const double x = c.samples[k].x;
      const double expect = 2.0 / ((1.0 - x * x) * (1.0 - x * x));
      CHECK(ahlfors_s1_numeric(c, k) == doctest::Approx(expect).epsilon(1e-6));
    }
  }
  const LiftedCurve c = sampled_curve([](double x) { return Vec3(x, 0, 0); }, 0, 1, 20);
  CHECK_THROWS_AS(ahlfors_s1_numeric(c, 2), BoundaryIndex);
  CHECK_THROWS_AS(ahlfors_s1_numeric(c, 17), BoundaryIndex);
}

TEST_CASE("S1 decomposition along lifted lines") {
  SUBCASE("flat lift with real coefficients") {
    const AnalyticFn z;
    const AnalyticFn h = exp(z) + 0.2 * z * z;
    const HarmonicMap m = HarmonicMap::analytic(h);
    for (double x : {-0.6, 0.0, 0.4}) {
      const Lemma1Terms t = ahlfors_s1_lemma1(m, x);
      CHECK(t.s1 == doctest::Approx(schwarzian(h, x).real()).epsilon(1e-12));
      CHECK(t.k_term == doctest::Approx(0.0));
      CHECK(std::abs(t.ke_term) < 1e-12);
    }
  }
  SUBCASE("catenoid diameter against numeric S1") {
    const ExampleMap ex = catenoid_exp(60.0);
    const LiftedCurve c = lift_line(ex.map, 0.0, 1.0, -0.9, 0.9, 1801);
    for (double x : {-0.5, 0.0, 0.5}) {
      const std::size_t k = static_cast<std::size_t>(std::lround((x + 0.9) / 1.8 * 1800));
      const Lemma1Terms t = ahlfors_s1_lemma1(ex.map, x);
      CHECK(std::abs(t.s1 - ahlfors_s1_numeric(c, k)) <= 1e-5);
    }
  }
  SUBCASE("S1 never exceeds Re Sf + e^{2 sigma}|K|") {
    Rng rng(21);
    const std::vector<HarmonicMap> maps = {catenoid_exp(60.0).map, twisted_map(), strip_catenoid("nehari2").map};
    for (const auto& m : maps) {
      for (int k = 0; k < 100; ++k) {
        const cplx z = rng.disk(0.9);
        const cplx d = std::polar(1.0, rng.uniform(0, 2 * kPi));
        const Lemma1Terms t = ahlfors_s1_lemma1(m, z, d);
        CHECK(t.s1 <= t.re_sf + t.k_term + 1e-9 * std::max(1.0, std::abs(t.s1)));
      }
    }
  }
}

TEST_CASE("lifted curve invariants and the Frenet decomposition") {
  const HarmonicMap m = twisted_map();
  const LiftedCurve c = lift_line(m, cplx(0.1, -0.2), std::polar(1.0, 0.7), -0.6, 0.6, 1201);
  for (std::size_t k = 0; k < c.size(); k += 50) {
    const CurveSample& s = c.samples[k];
    CHECK(s.speed == doctest::Approx(s.velocity.norm()).epsilon(1e-6));
    CHECK(std::abs(s.normal.dot(s.velocity)) <= 1e-8 * s.speed);
  }
  for (std::size_t k = 10; k + 10 < c.size(); k += 97) CHECK(frenet_residual(c, k) <= 1e-4);
  const ExampleMap ex = catenoid_exp(60.0);
  const LiftedCurve d = lift_line(ex.map, 0.0, 1.0, -0.9, 0.9, 1801);
  for (std::size_t k = 10; k + 10 < d.size(); k += 97) CHECK(frenet_residual(d, k) <= 1e-4);
}

TEST_CASE("space Moebius invariance of S1") {
  const ExampleMap ex = catenoid_exp(60.0);
  const LiftedCurve c = lift_line(ex.map, 0.0, 1.0, -0.9, 0.9, 1801);
  SUBCASE("identity") {
    const LiftedCurve d = apply_space_mobius(SpaceMobius::identity(), c);
    for (std::size_t k = 0; k < c.size(); k += 100) CHECK((d.samples[k].point - c.samples[k].point).norm() == 0.0);
  }
  auto compare = [&](const SpaceMobius& t, double tol) {
    const LiftedCurve d = apply_space_mobius(t, c);
    double worst = 0.0;
    for (std::size_t k = 20; k + 20 < c.size(); k += 25) {
      const double a = ahlfors_s1_numeric(c, k);
      worst = std::max(worst, std::abs(ahlfors_s1_numeric(d, k) - a) / std::max(1.0, std::abs(a)));
    }
    return worst <= tol;
  };
  SUBCASE("dilation") {
    SpaceMobius t;
    t.dilate(3.0);
    CHECK(compare(t, 1e-6));
  }
  SUBCASE("rotation and translation") {
    SpaceMobius t;
    t.rotate(Eigen::AngleAxisd(0.7, Vec3(1, 2, 3).normalized()).toRotationMatrix()).translate(Vec3(4, -1, 2));
    CHECK(compare(t, 1e-6));
  }
  SUBCASE("inversion") {
    SpaceMobius t;
    t.translate(Vec3(10, 20, -5)).invert();
    CHECK(compare(t, 1e-4));
  }
  SUBCASE("inversion pole") {
    SpaceMobius t;
    t.translate(-c.samples[900].point).invert();
    CHECK_THROWS_AS(apply_space_mobius(t, c), InversionPole);
  }
}

TEST_CASE("derivative bound after second-order normalization") {
  const ExampleMap ex = catenoid_exp(60.0);
  const NehariFunction p = NehariFunction::pi2over4();
  const LiftDerivatives d = lift_derivatives(ex.map, 0.0, 1.0);
  const SpaceMobius t = normalize_second_order(lift_point(ex.map, 0.0).vec(), d.d1, d.d2);
  const LiftedCurve c = lift_line(ex.map, 0.0, 1.0, -0.95, 0.95, 381);
  for (const CurveSample& s : c.samples) {
    const double speed = (t.differential(s.point) * s.velocity).norm();
    CHECK(speed <= p.phi1(std::abs(s.x)) * (1.0 + 1e-6));
  }
  const Vec3 img = t.apply(lift_point(ex.map, 0.0).vec());
  CHECK(img.norm() < 1e-12);
  CHECK((t.differential(lift_point(ex.map, 0.0).vec()) * d.d1 - Vec3(1, 0, 0)).norm() < 1e-12);
}

TEST_CASE("meshes") {
  SUBCASE("flat disk") {
    const Mesh mesh = lift_mesh(HarmonicMap::analytic(AnalyticFn()), 10, 24, 0.9);
    CHECK(mesh.vertices.size() == 10u * 24u + 1u);
    for (const Vec3& v : mesh.vertices) CHECK(v.z() == 0.0);
    CHECK(mesh.faces.size() == 24u + 2u * 9u * 24u);
  }
  SUBCASE("catenoid mesh") {
    const double c = 60.0;
    const ExampleMap ex = catenoid_exp(c);
    const Mesh mesh = lift_mesh(ex.map, 20, 48, 0.99);
    double worst = 0.0, worst_normal = 0.0;
    for (std::size_t k = 0; k < mesh.vertices.size(); ++k) {
      const double x = mesh.sources[k].real();
      const double rho = c * std::exp(kPi * x) + std::exp(-kPi * x) / c;
      worst = std::max(worst, std::abs(std::hypot(mesh.vertices[k].x(), mesh.vertices[k].y()) - rho) / rho);
      worst_normal = std::max(worst_normal, (mesh.normals[k] - surface_normal(ex.map, mesh.sources[k])).norm());
    }
    CHECK(worst <= 1e-8);
    CHECK(worst_normal <= 1e-6);
  }
  SUBCASE("OBJ and PLY output") {
    const Mesh mesh = lift_mesh(catenoid_exp(60.0).map, 3, 8, 0.5);
    std::ostringstream obj;
    write_obj(obj, mesh);
    const std::string o = obj.str();
    std::size_t v = 0, vn = 0, f = 0;
    std::istringstream in(o);
    for (std::string line; std::getline(in, line);) {
      if (line.rfind("v ", 0) == 0) ++v;
      if (line.rfind("vn ", 0) == 0) ++vn;
      if (line.rfind("f ", 0) == 0) ++f;
    }
    CHECK(v == mesh.vertices.size());
    CHECK(vn == mesh.vertices.size());
    CHECK(f == mesh.faces.size());
    std::ostringstream ply;
    write_ply(ply, mesh);
    const std::string p = ply.str();
    CHECK(p.rfind("ply\nformat binary_little_endian 1.0\n", 0) == 0);
    const std::size_t body = p.find("end_header\n") + 11;
    CHECK(p.size() - body == mesh.vertices.size() * 24 + mesh.faces.size() * 13);
  }
}

TEST_CASE("curve CSV") {
  const ExampleMap ex = catenoid_exp(60.0);
  const LiftedCurve c = lift_line(ex.map, 0.0, 1.0, -0.5, 0.5, 21);
  std::ostringstream os;
  write_curve_csv(os, ex.map, c, 1.0);
  std::istringstream in(os.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,u,v,w,speed,s1_numeric,s1_decomposition");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 21);
  CHECK(os.str().find("nan") != std::string::npos);
}

}  // TEST_SUITE
