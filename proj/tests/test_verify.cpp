#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "schwarzlift/audit.hpp"
#include "schwarzlift/criterion.hpp"
#include "schwarzlift/error.hpp"
#include "schwarzlift/examples.hpp"
#include "schwarzlift/scan.hpp"

using namespace schwarzlift;
using oracle::Rng;

TEST_SUITE("verify") {

TEST_CASE("closed forms agree with the engine") {
  CHECK(catenoid_exp(60.0).closed_form_defect() <= 1e-9);
  CHECK(catenoid_exp(50.0, 1.3).closed_form_defect() <= 1e-9);
  for (const std::string key : {"nehari2", "pi2over4", "two_over_1mx2"})
    CHECK(strip_catenoid(key).closed_form_defect() <= 1e-9);
  CHECK(hille(0.1, 0.05).closed_form_defect() <= 1e-9);
}

TEST_CASE("catalogue maps evaluate their defining formulas") {
  Rng rng(21);
  const ExampleMap cat = catenoid_exp(60.0, 1.2);
  const ExampleMap strip = strip_catenoid("nehari2", 0.05);
  const cplx I(0.0, 1.0);
  for (int k = 0; k < 30; ++k) {
    const cplx z = rng.disk(0.95);
    const cplx expect = 60.0 * std::exp(1.2 * kPi * z) + std::conj(std::exp(-1.2 * kPi * z) / 60.0);
    CHECK(std::abs(cat.map.value(z) - expect) <= 1e-12 * std::abs(expect));
    const cplx F = std::atanh(z);
    const cplx G = (0.05 * F + I) / (0.05 * F - I);
    CHECK(std::abs(strip.map.value(z) - (G + std::conj(1.0 / G))) <= 1e-12);
  }
  // f_t(z) = f_1(t z): the Schwarzian picks up t^2.
  const ExampleMap one = catenoid_exp(60.0);
  for (int k = 0; k < 10; ++k) {
    const cplx z = rng.disk(0.7);
    const cplx expect = 1.44 * one.closed_schwarzian(1.2 * z);
    CHECK(std::abs(cat.closed_schwarzian(z) - expect) <= 1e-12 * std::abs(expect));
  }
  CHECK(example_catalogue().size() >= 3);
}

TEST_CASE("parameter errors") {
  CHECK_THROWS_AS(catenoid_exp(0.0), ParamError);
  CHECK_THROWS_AS(catenoid_exp(1.0, -1.0), ParamError);
  CHECK_THROWS_AS(hille(0.05, 0.99), ParamError);
  CHECK_THROWS_AS(make_example("torus", 1.0, 1.0, 0.1, "nehari2"), ParamError);
  CHECK_THROWS_AS(strip_catenoid("nehari2", 2.0), ParamError);
  CHECK_THROWS_AS(extremal_analytic("bogus"), ParamError);
}

TEST_CASE("criterion on the catenoid family") {
  const NehariFunction p = NehariFunction::pi2over4();
  const CriterionReport r = check_criterion(catenoid_exp(60.0).map, p);
  CHECK(r.pass);
  CHECK(r.samples.size() == 1 + 60 * 60);
  CHECK(r.max_abs_margin <= 1e-9);
  CHECK(r.equality_locus.size() == r.samples.size());
  for (double t : {1.1, 1.2}) {
    const CriterionReport s = check_criterion(catenoid_exp(60.0, t).map, p);
    CHECK_FALSE(s.pass);
    // The scaled identity gives t^2 pi^2 / 2 wherever Re Sf stays negative.
    CHECK(s.min_margin <= (1.0 - t * t) * kPi * kPi / 2.0 + 1e-9);
    CHECK(s.samples.front().margin == doctest::Approx((1.0 - t * t) * kPi * kPi / 2.0).epsilon(1e-9));
  }
  CriterionGrid wide;
  wide.rmax = 0.999;
  const CriterionReport c50 = check_criterion(catenoid_exp(50.0).map, p, wide);
  CHECK(c50.min_margin <= -1e-3);
  CHECK(c50.argmin.real() < -0.9);
  CHECK(check_criterion(catenoid_exp(56.0).map, p, wide).pass);
  double lowest = 1e300;
  for (const MarginSample& s : r.samples) lowest = std::min(lowest, s.margin);
  CHECK(lowest == r.min_margin);
}

TEST_CASE("margin CSV") {
  CriterionGrid g;
  g.nr = 2;
  g.ntheta = 3;
  const CriterionReport r = check_criterion(catenoid_exp(60.0).map, NehariFunction::pi2over4(), g);
  std::ostringstream os;
  write_margin_csv(os, r);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "r,theta,margin");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 7);
}

TEST_CASE("chart failures carry the point") {
  const AnalyticFn z;
  const HarmonicMap m = HarmonicMap::make(z * z, AnalyticFn::constant(0.0), AnalyticFn::constant(0.0), 0.0,
                                          std::nullopt, false);
  try {
    check_criterion(m, NehariFunction::pi2over4());
    FAIL("expected ChartError");
  } catch (const ChartError& e) {
    CHECK(std::string(e.what()).find("(0,0)") != std::string::npos);
  }
}

TEST_CASE("reduced inequality for the strip example") {
  const AnalyticFn F = extremal_analytic("nehari2");
  for (int k = -99; k <= 99; ++k) CHECK(std::abs(example2_reduced_margin(F, 0.05, 0.99 * k / 100.0)) <= 1e-10);
  CHECK(example2_reduced_margin(F, 0.05, {0.3, 0.4}) > 0.0);
  for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const LevelArcSweep s = level_arc_sweep(F, 0.05, t);
    CHECK(s.min_margin > 0.0);
    CHECK(s.level_defect <= 1e-9);
  }
  CHECK(probe_example2_c(F, 0.05));
  // Level arcs: |1 - z^2| / (1 - |z|^2) is constant along them.
  for (const cplx z : level_arc_points(0.5, 101)) {
    CHECK(std::abs(z) < 1.0);
    CHECK(std::abs(1.0 - z * z) / (1.0 - std::norm(z)) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-9));
  }
}

TEST_CASE("univalence scans") {
  const ScanReport ok = univalence_scan(catenoid_exp(60.0).map);
  CHECK(ok.pass);
  CHECK(ok.interior_collisions.empty());
  REQUIRE(ok.nearest_boundary.has_value());
  const ScanPair& b = *ok.nearest_boundary;
  CHECK(std::abs(b.z1.imag()) > 0.99);
  CHECK(std::abs(b.z1 + b.z2) <= 0.05);
  ScanOptions o;
  o.rmax = 0.99;
  const ScanReport bad = univalence_scan(catenoid_exp(60.0, 1.5).map, o);
  CHECK_FALSE(bad.pass);
  REQUIRE_FALSE(bad.interior_collisions.empty());
  const ScanPair& c = bad.interior_collisions.front();
  CHECK(c.distance <= 1e-8 * std::max(1.0, c.threshold));
  CHECK(std::abs(c.z1 - c.z2) >= o.sep);
  CHECK(univalence_scan(HarmonicMap::analytic(AnalyticFn::identity())).pass);
  const std::vector<cplx> pts = scan_samples(500, 0.9);
  for (const cplx z : pts) CHECK(std::abs(z) <= 0.9 + 1e-15);
  CHECK(pts.size() >= 500);
}

TEST_CASE("boundary cut sequence") {
  const BoundaryCutSequence s = boundary_cut_sequence(catenoid_exp(60.0).map);
  CHECK(s.shrinking);
  REQUIRE(s.limit_pair.has_value());
  const ScanPair& p = *s.limit_pair;
  const cplx top = p.z1.imag() > 0 ? p.z1 : p.z2;
  const cplx bottom = p.z1.imag() > 0 ? p.z2 : p.z1;
  CHECK(std::abs(top - cplx(0.0, 1.0)) <= 1e-2);
  CHECK(std::abs(bottom - cplx(0.0, -1.0)) <= 1e-2);
}

TEST_CASE("cut point circle") {
  const ExampleMap ex = catenoid_exp(60.0);
  const CutPointReport r = cut_point_circle_audit(ex);
  CHECK(r.pass);
  CHECK(r.radius == doctest::Approx(60.0 + 1.0 / 60.0));
  CHECK(std::abs(r.lift_plus_i.u + 60.0 - 1.0 / 60.0 * -1.0) <= 1e-9);
  CHECK(std::abs(r.lift_minus_i.vec().norm() - (60.0 + 1.0 / 60.0)) <= 1e-9);
  CHECK((r.lift_plus_i.vec() - r.lift_minus_i.vec()).norm() <= 1e-9);
  CHECK_THROWS_AS(cut_point_circle_audit(strip_catenoid("nehari2")), NotApplicable);
  CHECK_THROWS_AS(cut_point_circle_audit(catenoid_exp(60.0, 1.2)), NotApplicable);
}

TEST_CASE("Hille family") {
  const HilleReport r = hille_audit(0.05, 0.02);
  CHECK(r.delta <= 0.2);
  // At the origin the Schwarzian alone gives 2 eps^2.
  CHECK(r.delta >= 2.0 * 0.05 * 0.05 - 1e-12);
  CHECK(r.roots.size() >= 2);
  for (const HilleRoot& root : r.roots) {
    CHECK(root.residual <= 1e-10);
    CHECK(std::abs(std::fmod(std::abs(root.w.real()) + 1e-9, 2.0 * kPi / 0.05)) <= 1e-6);
    CHECK(root.boundary_gap > 0.0);
  }
  const double bound = std::exp(0.05 * kPi / 2.0);
  CHECK(r.max_abs_F <= bound);
  CHECK(r.min_abs_F >= 1.0 / bound);
}

TEST_CASE("transfer under disk automorphisms") {
  Rng rng(22);
  const ExampleMap strip = strip_catenoid("nehari2");
  const NehariFunction p = NehariFunction::nehari2();
  for (int k = 0; k < 10; ++k) {
    const DiskMobius t{rng.uniform(-0.8, 0.8), rng.uniform(0.0, 2.0 * kPi)};
    const TransferReport r = mobius_transfer_check(strip.map, p, t);
    CHECK(r.min_margin >= -1e-8 * p(0.95));
    CHECK(r.min_trick_margin >= -1e-12);
    const HarmonicMap c = compose_disk(strip.map, t);
    const cplx z = rng.disk(0.5);
    CHECK(std::abs(c.value(z) - strip.map.value(t.apply(z))) <= 1e-12);
  }
  for (const std::string key : {"pi2over4", "two_over_1mx2"})
    CHECK(nehari_trick_violation(nehari_from_key(key), DiskMobius{0.5, 0.0}) < 0.0);
  CHECK(std::abs(nehari_trick_violation(p, DiskMobius{0.5, 0.3})) <= 1e-9);
}

}  // TEST_SUITE
