#include "schwarzlift/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "schwarzlift/error.hpp"

namespace schwarzlift {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640, e5 = -92097.0 / 339200,
                 e6 = 187.0 / 2100, e7 = 1.0 / 40;

struct StepResult {
  State y;
  State err;
};

StepResult dp_step(const OdeRhs& f, double t, const State& y, double h) {
  const std::size_t n = y.size();
  State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n);
  f(t, y, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
  f(t + c2 * h, tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  f(t + c3 * h, tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  f(t + c4 * h, tmp, k4);
  for (std::size_t i = 0; i < n; ++i)
    tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  f(t + c5 * h, tmp, k5);
  for (std::size_t i = 0; i < n; ++i)
    tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
  f(t + h, tmp, k6);
  StepResult r{State(n), State(n)};
  for (std::size_t i = 0; i < n; ++i)
    r.y[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
  f(t + h, r.y, k7);
  for (std::size_t i = 0; i < n; ++i) {
    const double low = y[i] + h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    r.err[i] = r.y[i] - low;
  }
  return r;
}

bool finite_state(const State& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

std::vector<State> integrate_adaptive(const OdeRhs& f, const State& y0, const std::vector<double>& nodes,
                                      const OdeOptions& opts, const StepObserver& observer) {
  std::vector<State> out;
  if (nodes.empty()) return out;
  out.push_back(y0);
  double t = nodes.front();
  State y = y0;
  double h = opts.initial_step;
  long steps = 0;
  for (std::size_t k = 1; k < nodes.size(); ++k) {
    const double target = nodes[k];
    while (t < target) {
      if (++steps > opts.max_steps) {
        std::ostringstream os;
        os << "ODE step budget exhausted at t = " << t;
        throw Error(os.str());
      }
      h = std::min({h, opts.max_step, target - t});
      const bool last = h >= target - t;
      StepResult r = dp_step(f, t, y, h);
      double err = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        const double sc = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(r.y[i]));
        err = std::max(err, std::abs(r.err[i]) / sc);
      }
      if (!finite_state(r.y)) err = 1e10;
      if (err <= 1.0) {
        const double t1 = last ? target : t + h;
        if (observer && !observer(t, y, t1, r.y)) return out;
        t = t1;
        y = std::move(r.y);
        const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
        h *= grow;
      } else {
        h *= std::max(0.1, 0.9 * std::pow(err, -0.2));
        if (h < 1e-15 * std::max(1.0, std::abs(t))) {
          std::ostringstream os;
          os << "ODE step size underflow at t = " << t;
          throw Error(os.str());
        }
      }
    }
    out.push_back(y);
  }
  return out;
}

std::vector<State> integrate_fixed(const OdeRhs& f, const State& y0, const std::vector<double>& nodes, double h) {
  std::vector<State> out;
  if (nodes.empty()) return out;
  out.push_back(y0);
  double t = nodes.front();
  State y = y0;
  for (std::size_t k = 1; k < nodes.size(); ++k) {
    const double target = nodes[k];
    while (t < target) {
      const double step = std::min(h, target - t);
      y = dp_step(f, t, y, step).y;
      t = step >= target - t ? target : t + step;
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace schwarzlift
