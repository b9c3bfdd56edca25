#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "schwarzlift/analytic.hpp"

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

/// k-th derivative from the trapezoid rule on a circle of radius r; spectrally
/// accurate for analytic f and independent of the jet machinery.
inline cplx cauchy_derivative(const std::function<cplx(cplx)>& f, cplx z, int k, double r = 1e-2, int n = 64) {
  cplx acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const cplx w = std::polar(1.0, 2.0 * pi * j / n);
    acc += f(z + r * w) / std::pow(w, k);
  }
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return acc * fact / (static_cast<double>(n) * std::pow(r, k));
}

inline double central_d1(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double central_d2(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

inline cplx schwarzian_from(cplx f1, cplx f2, cplx f3) { return f3 / f1 - 1.5 * (f2 / f1) * (f2 / f1); }

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(eng); }
  cplx disk(double radius) { return std::polar(radius * std::sqrt(uniform(0.0, 1.0)), uniform(0.0, 2.0 * pi)); }
  cplx complex_box(double a) { return {uniform(-a, a), uniform(-a, a)}; }
};

/// Random well-conditioned expression of bounded depth near the disk.
inline schwarzlift::AnalyticFn random_expression(Rng& rng, int depth) {
  using schwarzlift::AnalyticFn;
  const AnalyticFn z;
  if (depth == 0) {
    switch (rng.integer(0, 2)) {
      case 0: return z;
      case 1: return rng.complex_box(0.8) * z + rng.complex_box(0.5);
      default: return AnalyticFn::constant(rng.complex_box(1.0)) + z * z * rng.uniform(0.1, 0.5);
    }
  }
  const AnalyticFn a = random_expression(rng, depth - 1);
  switch (rng.integer(0, 6)) {
    case 0: return a + random_expression(rng, depth - 1);
    case 1: return a * random_expression(rng, depth - 1);
    case 2: return exp(0.5 * a);
    case 3: return log(2.5 + 0.3 * a);
    case 4: return a / (3.0 + 0.4 * random_expression(rng, depth - 1));
    case 5: return pow(2.0 + 0.3 * a, cplx(rng.uniform(-1.5, 1.5), rng.uniform(-0.5, 0.5)));
    default: return integral(1.0 + 0.2 * a * a, 0.0);
  }
}

}  // namespace oracle
