#include <doctest.h>

#include <string>

#include "oracles.hpp"
#include "schwarzlift/audit.hpp"
#include "schwarzlift/disk_mobius.hpp"
#include "schwarzlift/error.hpp"
#include "schwarzlift/nehari.hpp"

using namespace schwarzlift;
using oracle::Rng;

namespace {

const cplx I(0.0, 1.0);

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Worst relative gap between jets and Cauchy-circle derivatives.
double jet_vs_oracle(const AnalyticFn& f, cplx z) {
  const Jet3 j = f.eval(z);
  auto fv = [&](cplx w) { return f.value(w); };
  double worst = rel(j.f0, f.value(z));
  worst = std::max(worst, rel(j.f1, oracle::cauchy_derivative(fv, z, 1)));
  worst = std::max(worst, rel(j.f2, oracle::cauchy_derivative(fv, z, 2)));
  worst = std::max(worst, rel(j.f3, oracle::cauchy_derivative(fv, z, 3)));
  return worst;
}

}  // namespace

TEST_SUITE("jets") {

TEST_CASE("exp(pi z) at 0 has jet (1, pi, pi^2, pi^3)") {
  const Jet3 j = exp(kPi * AnalyticFn()).eval(0.0);
  CHECK(std::abs(j.f0 - 1.0) < 1e-15);
  CHECK(std::abs(j.f1 - kPi) < 1e-14);
  CHECK(std::abs(j.f2 - kPi * kPi) < 1e-13);
  CHECK(std::abs(j.f3 - kPi * kPi * kPi) < 1e-12);
}

TEST_CASE("identity jet") {
  const cplx z(0.5, 0.1);
  const Jet3 j = AnalyticFn().eval(z);
  CHECK(j.f0 == z);
  CHECK(j.f1 == cplx(1.0));
  CHECK(j.f2 == cplx(0.0));
  CHECK(j.f3 == cplx(0.0));
}

TEST_CASE("artanh jet at 0 matches the series z + z^3/3") {
  const Jet3 j = atanh(AnalyticFn()).eval(0.0);
  CHECK(std::abs(j.f0) < 1e-15);
  CHECK(std::abs(j.f1 - 1.0) < 1e-15);
  CHECK(std::abs(j.f2) < 1e-15);
  CHECK(std::abs(j.f3 - 2.0) < 1e-14);
  CHECK(jet_vs_oracle(atanh(AnalyticFn()), 0.0) < 1e-9);
}

TEST_CASE("every grammar node agrees with the Cauchy oracle at 200 points") {
  const AnalyticFn z;
  const std::vector<std::pair<std::string, AnalyticFn>> nodes = {
      {"const", AnalyticFn::constant(cplx(0.3, -2.0))},
      {"identity", z},
      {"add", z + exp(z)},
      {"sub", z - z * z},
      {"mul", (z + 2.0) * exp(0.5 * z)},
      {"div", (1.0 + z) / (2.0 - z)},
      {"neg", -(z * z * z)},
      {"compose", compose(exp(z), 0.5 * z * z + z)},
      {"exp", exp(kPi * z)},
      {"log", log((1.0 + z) / (1.0 - z))},
      {"pow", pow(2.0 + z, cplx(0.7, 0.4))},
      {"pow_int", pow(1.5 + z, -3.0)},
      {"integral", integral(1.0 / (1.0 - z * z), 0.0)},
  };
  Rng rng(11);
  for (const auto& [name, f] : nodes) {
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) worst = std::max(worst, jet_vs_oracle(f, rng.disk(0.85)));
    INFO(name);
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("domain errors name the offending sub-expression") {
  const AnalyticFn z;
  const AnalyticFn f = log(z) + z;
  CHECK_FALSE(f.in_domain(-0.5));
  try {
    f.eval(-0.5);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("log(z)") != std::string::npos);
  }
  CHECK_THROWS_AS((1.0 / (z - 0.25)).eval(0.25), DomainError);
  CHECK(f.in_domain(0.5));
}

TEST_CASE("Schwarzian examples") {
  const AnalyticFn z;
  Rng rng(3);
  SUBCASE("Moebius maps have vanishing Schwarzian") {
    for (int k = 0; k < 50; ++k) {
      cplx a = rng.complex_box(2), b = rng.complex_box(2), c = rng.complex_box(2), d = rng.complex_box(2);
      if (std::abs(a * d - b * c) < 0.1) continue;
      const AnalyticFn T = mobius(a, b, c, d);
      for (int j = 0; j < 50; ++j) {
        const cplx w = rng.disk(0.9);
        if (std::abs(c * w + d) < 0.2) continue;
        CHECK(std::abs(schwarzian(T, w)) <= 1e-10 * std::max(1.0, std::norm(T.eval(w).f2 / T.eval(w).f1)));
      }
    }
  }
  SUBCASE("artanh") {
    for (int k = 0; k < 20; ++k) {
      const cplx w = rng.disk(0.9);
      const cplx expect = 2.0 / ((1.0 - w * w) * (1.0 - w * w));
      CHECK(rel(schwarzian(atanh(z), w), expect) < 1e-11);
    }
  }
  SUBCASE("((1+z)/(1-z))^{i eps}") {
    const double eps = 0.1;
    const AnalyticFn F = pow((1.0 + z) / (1.0 - z), cplx(0.0, eps));
    for (int k = 0; k < 20; ++k) {
      const cplx w = rng.disk(0.9);
      const cplx expect = 2.0 * (1.0 + eps * eps) / ((1.0 - w * w) * (1.0 - w * w));
      CHECK(rel(schwarzian(F, w), expect) < 1e-10);
    }
  }
  SUBCASE("critical points are rejected") { CHECK_THROWS_AS(schwarzian(z * z, 0.0), CriticalPoint); }
}

TEST_CASE("chain rule") {
  const AnalyticFn z;
  CHECK(chain_rule_residual(mobius(1.0, 2.0, 0.5, 3.0), exp(kPi * z), 0.2) <= 1e-10);
  CHECK(chain_rule_residual(exp(z), log(z), cplx(1.05, 0.02)) <= 1e-9);
  CHECK(std::abs(schwarzian(compose(exp(z), log(z)), cplx(1.05, 0.02))) <= 1e-9);

  Rng rng(2024);
  int tested = 0;
  while (tested < 100) {
    const AnalyticFn g = oracle::random_expression(rng, 2);
    const AnalyticFn f = oracle::random_expression(rng, 2);
    const cplx w = rng.disk(0.8);
    double r;
    double scale;
    try {
      const Jet3 jf = f.eval(w);
      const Jet3 jg = g.eval(jf.f0);
      if (std::abs(jf.f1) < 1e-3 || std::abs(jg.f1) < 1e-3) continue;
      r = chain_rule_residual(g, f, w);
      scale = std::max({1.0, std::abs(classical_schwarzian(jf)),
                        std::abs(classical_schwarzian(jg) * jf.f1 * jf.f1)});
    } catch (const DomainError&) {
      continue;
    }
    ++tested;
    INFO("g = " << g.str() << ", f = " << f.str());
    CHECK(r <= 1e-8 * scale);
  }
}

TEST_CASE("disk automorphism basics") {
  Rng rng(5);
  for (int k = 1; k <= 9; ++k) {
    const DiskMobius T{0.1 * k, 0.0};
    for (int j = 0; j < 50; ++j) {
      const cplx z = rng.disk(0.999);
      CHECK(std::abs(T.apply(T.apply(z)) - z) <= 1e-12);
      CHECK(std::abs(T.apply(z)) < 1.0);
    }
  }
  const DiskMobius T{0.4, 1.1};
  for (int j = 0; j < 20; ++j) {
    const cplx z = rng.disk(0.9);
    CHECK(std::abs(T.inverse(T.apply(z)) - z) <= 1e-12);
    CHECK(std::abs(T.as_analytic().value(z) - T.apply(z)) <= 1e-14);
    CHECK(std::abs(T.as_analytic().eval(z).f1 - T.derivative(z)) <= 1e-12);
  }
}

TEST_CASE("geodesic transform") {
  SUBCASE("real pair needs no hyperbolic motion") {
    const GeodesicTransform g = disk_mobius_geodesic(-0.3, 0.3);
    CHECK(g.transform.rho == doctest::Approx(0.0));
    CHECK(g.x1 == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(g.x2 == doctest::Approx(0.3).epsilon(1e-12));
    for (double x : {-0.9, -0.2, 0.0, 0.5}) CHECK(std::abs(g.transform.apply(x) - x) <= 1e-14);
  }
  SUBCASE("pair on the imaginary axis") {
    const GeodesicTransform g = disk_mobius_geodesic(0.3 * I, 0.6 * I);
    CHECK(std::abs(g.transform.apply(g.x1) - 0.3 * I) <= 1e-12);
    CHECK(std::abs(g.transform.apply(g.x2) - 0.6 * I) <= 1e-12);
  }
  SUBCASE("random pairs map back onto the real diameter") {
    Rng rng(77);
    for (int k = 0; k < 200; ++k) {
      const cplx z1 = rng.disk(0.95), z2 = rng.disk(0.95);
      if (std::abs(z1 - z2) < 1e-3) continue;
      const GeodesicTransform g = disk_mobius_geodesic(z1, z2);
      CHECK(std::abs(g.transform.apply(g.x1) - z1) <= 1e-10);
      CHECK(std::abs(g.transform.apply(g.x2) - z2) <= 1e-10);
      CHECK(std::abs(g.x1) < 1.0);
      CHECK(std::abs(g.x2) < 1.0);
    }
  }
  SUBCASE("the special automorphism pushes real points outward") {
    for (double rho : {-0.7, -0.2, 0.1, 0.5, 0.9}) {
      const DiskMobius T{rho, 0.0};
      for (int k = 1; k < 1000; ++k) {
        const double x = -1.0 + 2.0 * k / 1000.0;
        if (x == 0.0) continue;
        CHECK(std::abs(T.apply(x)) > std::abs(x));
      }
    }
  }
  CHECK_THROWS_AS(disk_mobius_geodesic(0.2, 0.2 + 1e-15), DegenerateInput);
  CHECK_THROWS_AS(disk_mobius_geodesic(0.2, 1.2), DomainError);
}

TEST_CASE("Nehari trick on the weight catalogue") {
  for (const std::string key : {"pi2over4", "nehari2", "two_over_1mx2", "one_over_1mx2"}) {
    const NehariFunction p = nehari_from_key(key);
    for (double rho : {0.05, 0.3, 0.6, 0.9, -0.45}) {
      INFO(key << " rho = " << rho);
      const double v = nehari_trick_violation(p, {rho, 0.0}, 1999, 0.999);
      CHECK(v <= 1e-12);
    }
  }
}

}  // TEST_SUITE
