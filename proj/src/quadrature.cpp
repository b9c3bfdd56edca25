#include "schwarzlift/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "schwarzlift/error.hpp"

namespace schwarzlift {

namespace {

// Kronrod abscissae on [0,1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  cplx value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const cplx fc = f(center);
  cplx kron = fc * kWgk[7];
  cplx gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const cplx s = f(center - dx) + f(center + dx);
    kron += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  kron *= half;
  gauss *= half;
  return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

QuadratureResult integrate_gk(const std::function<cplx(double)>& f, double a, double b,
                              const QuadratureOptions& opts) {
  if (a == b) return {};
  std::priority_queue<Panel> panels;
  panels.push(gk15(f, a, b));
  cplx total = panels.top().value;
  double err = panels.top().error;
  int splits = 0;
  auto done = [&] { return err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
  while (!done()) {
    if (splits >= opts.max_subdivisions) {
      std::ostringstream msg;
      msg << "quadrature on [" << a << ", " << b << "] did not reach tolerance "
          << opts.abs_tol << " within " << opts.max_subdivisions
          << " subdivisions (error estimate " << err << ")";
      throw QuadratureError(msg.str());
    }
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++splits;
    // Running sums drift; resum occasionally.
    if (splits % 64 == 0) {
      std::vector<Panel> all;
      total = 0.0;
      err = 0.0;
      while (!panels.empty()) {
        all.push_back(panels.top());
        panels.pop();
      }
      for (const auto& p : all) {
        total += p.value;
        err += p.error;
        panels.push(p);
      }
    }
  }
  return {total, err, splits};
}

QuadratureResult integrate_segment(const std::function<cplx(cplx)>& f, cplx from, cplx to,
                                   const QuadratureOptions& opts) {
  const cplx d = to - from;
  if (d == cplx(0.0)) return {};
  return integrate_gk([&](double t) { return f(from + t * d) * d; }, 0.0, 1.0, opts);
}

}  // namespace schwarzlift
