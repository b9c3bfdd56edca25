#include "schwarzlift/nehari.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "schwarzlift/error.hpp"
#include "schwarzlift/jets.hpp"
#include "schwarzlift/ode.hpp"

namespace schwarzlift {

NehariFunction NehariFunction::constant(double value) {
  NehariFunction f;
  std::ostringstream os;
  os.precision(17);
  os << value;
  f.name = os.str();
  f.p = [value](double) { return value; };
  f.lambda = 0.0;
  if (value > 0.0) {
    const double k = std::sqrt(value);
    f.phi = [k](double x) { return std::tan(k * x) / k; };
    f.phi1 = [k](double x) {
      const double c = std::cos(k * x);
      return 1.0 / (c * c);
    };
  } else if (value == 0.0) {
    f.phi = [](double x) { return x; };
    f.phi1 = [](double) { return 1.0; };
  }
  f.complete = value == kPi * kPi / 4.0;
  return f;
}

NehariFunction NehariFunction::pi2over4() {
  NehariFunction f = constant(kPi * kPi / 4.0);
  f.name = "pi2over4";
  f.complete = true;
  return f;
}

NehariFunction NehariFunction::nehari2() {
  NehariFunction f;
  f.name = "nehari2";
  f.p = [](double x) {
    const double w = 1.0 - x * x;
    return 1.0 / (w * w);
  };
  f.phi = [](double x) { return std::atanh(x); };
  f.phi1 = [](double x) { return 1.0 / (1.0 - x * x); };
  f.lambda = 1.0;
  return f;
}

NehariFunction NehariFunction::two_over_1mx2() {
  NehariFunction f;
  f.name = "two_over_1mx2";
  f.p = [](double x) { return 2.0 / (1.0 - x * x); };
  f.phi = [](double x) { return x / (2.0 * (1.0 - x * x)) + 0.5 * std::atanh(x); };
  f.phi1 = [](double x) {
    const double w = 1.0 - x * x;
    return 1.0 / (w * w);
  };
  f.lambda = 0.0;
  return f;
}

NehariFunction NehariFunction::one_over_1mx2() {
  NehariFunction f;
  f.name = "one_over_1mx2";
  f.p = [](double x) { return 1.0 / (1.0 - x * x); };
  f.lambda = 0.0;
  f.complete = false;
  return f;
}

NehariFunction NehariFunction::custom(std::string name, std::function<double(double)> p) {
  NehariFunction f;
  f.name = std::move(name);
  f.p = std::move(p);
  f.complete = false;
  return f;
}

NehariFunction NehariFunction::scaled(double t) const {
  if (t == 1.0) return *this;
  NehariFunction f;
  std::ostringstream os;
  os.precision(17);
  os << t << "*" << name;
  f.name = os.str();
  f.p = [t, base = p](double x) { return t * base(x); };
  if (lambda) f.lambda = t * *lambda;
  f.complete = false;
  return f;
}

NehariFunction nehari_from_key(const std::string& key) {
  if (key == "pi2over4") return NehariFunction::pi2over4();
  if (key == "nehari2") return NehariFunction::nehari2();
  if (key == "two_over_1mx2") return NehariFunction::two_over_1mx2();
  if (key == "one_over_1mx2") return NehariFunction::one_over_1mx2();
  if (key == "zero") return NehariFunction::constant(0.0);
  const auto star = key.find('*');
  if (star != std::string::npos) {
    double t = 0.0;
    const char* first = key.data();
    const char* last = key.data() + star;
    const auto res = std::from_chars(first, last, t);
    if (res.ec == std::errc() && res.ptr == last && t > 0.0) {
      return nehari_from_key(key.substr(star + 1)).scaled(t);
    }
  }
  throw ParamError("unknown Nehari catalogue key '" + key + "'");
}

std::vector<std::string> complete_catalogue() { return {"pi2over4", "nehari2", "two_over_1mx2"}; }

NehariAudit audit_nehari(const NehariFunction& p, double step) {
  NehariAudit a;
  a.min_value = std::numeric_limits<double>::infinity();
  double prev = std::numeric_limits<double>::quiet_NaN();
  const int n = static_cast<int>(std::floor((1.0 - 1e-12) / step));
  for (int k = 0; k <= n; ++k) {
    const double x = k * step;
    if (x >= 1.0) break;
    const double v = p(x);
    a.max_asymmetry = std::max(a.max_asymmetry, std::abs(v - p(-x)));
    a.min_value = std::min(a.min_value, v);
    const double w = (1.0 - x * x) * (1.0 - x * x) * v;
    if (k > 0) a.max_increase = std::max(a.max_increase, w - prev);
    prev = w;
  }
  a.ok = a.max_asymmetry <= 1e-12 && a.min_value > 0.0 && a.max_increase <= 1e-12;
  return a;
}

namespace {

double hermite(double y0, double m0, double y1, double m1, double h, double t) {
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * m0 + (-2 * t3 + 3 * t2) * y1 +
         (t3 - t2) * h * m1;
}

double hermite_monotone(double y0, double m0, double y1, double m1, double h, double t) {
  const double delta = (y1 - y0) / h;
  if (delta == 0.0) {
    m0 = m1 = 0.0;
  } else {
    const double a = m0 / delta, b = m1 / delta;
    if (a < 0.0) m0 = 0.0;
    if (b < 0.0) m1 = 0.0;
    const double s = a * a + b * b;
    if (a >= 0.0 && b >= 0.0 && s > 9.0) {
      const double tau = 3.0 / std::sqrt(s);
      m0 = tau * a * delta;
      m1 = tau * b * delta;
    }
  }
  return hermite(y0, m0, y1, m1, h, t);
}

// Zero of the cubic Hermite between two ODE samples.
double hermite_root(double t0, double u0, double du0, double t1, double u1, double du1) {
  const double h = t1 - t0;
  double lo = 0.0, hi = 1.0;
  const double s0 = u0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = hermite(u0, du0, u1, du1, h, mid);
    if ((v > 0.0) == (s0 > 0.0)) lo = mid; else hi = mid;
  }
  return t0 + 0.5 * (lo + hi) * h;
}

}  // namespace

ExtremalProfile ExtremalProfile::solve(const NehariFunction& p, double rmax, int n) {
  if (!(rmax > 0.0 && rmax < 1.0)) throw DomainError("profile radius must lie in (0, 1)");
  if (n < 3) throw DegenerateInput("profile needs at least three nodes");
  ExtremalProfile e;
  e.p_ = p;
  e.rmax_ = rmax;
  e.ds_ = std::atanh(rmax) / (n - 1);
  e.x_.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) e.x_[k] = k == n - 1 ? rmax : std::tanh(k * e.ds_);

  OdeOptions opts;
  opts.rtol = 1e-12;
  opts.atol = 1e-15;
  // First pass on (u, u') alone so that a zero is reported before 1/u^2
  // blows up the quadrature component.
  const OdeRhs lin = [&p](double t, const State& y, State& dy) {
    dy[0] = y[1];
    dy[1] = -p(t) * y[0];
  };
  double crossing = std::numeric_limits<double>::quiet_NaN();
  integrate_adaptive(lin, {1.0, 0.0}, {0.0, rmax}, opts,
                     [&](double t0, const State& y0, double t1, const State& y1) {
                       if (y1[0] <= 0.0) {
                         crossing = hermite_root(t0, y0[0], y0[1], t1, y1[0], y1[1]);
                         return false;
                       }
                       return true;
                     });
  if (!std::isnan(crossing)) {
    std::ostringstream os;
    os.precision(10);
    os << "u0 vanishes at x = " << crossing << " < rmax = " << rmax << " for p = " << p.name;
    throw DisconjugacyFailure(os.str(), crossing);
  }

  const OdeRhs full = [&p](double t, const State& y, State& dy) {
    dy[0] = y[1];
    dy[1] = -p(t) * y[0];
    dy[2] = 1.0 / (y[0] * y[0]);
  };
  const std::vector<State> ys = integrate_adaptive(full, {1.0, 0.0, 0.0}, e.x_, opts);
  e.u_.resize(n);
  e.du_.resize(n);
  e.phi_.resize(n);
  e.phi1_.resize(n);
  e.phi2_.resize(n);
  e.p_nodes_.resize(n);
  for (int k = 0; k < n; ++k) {
    const double u = ys[k][0], du = ys[k][1];
    e.u_[k] = u;
    e.du_[k] = du;
    e.phi_[k] = ys[k][2];
    e.phi1_[k] = 1.0 / (u * u);
    e.phi2_[k] = -2.0 * du / (u * u * u);
    e.p_nodes_[k] = p(e.x_[k]);
  }
  return e;
}

void ExtremalProfile::check_range(double x) const {
  if (std::abs(x) > rmax_ * (1.0 + 1e-15)) {
    std::ostringstream os;
    os.precision(17);
    os << "|x| = " << std::abs(x) << " exceeds the profile radius " << rmax_;
    throw OutOfRange(os.str());
  }
}

std::size_t ExtremalProfile::locate(double ax) const {
  const double s = std::atanh(std::min(ax, rmax_));
  auto k = static_cast<std::size_t>(std::max(0.0, std::floor(s / ds_)));
  k = std::min(k, x_.size() - 2);
  while (k > 0 && x_[k] > ax) --k;
  while (k + 2 < x_.size() && x_[k + 1] < ax) ++k;
  return k;
}

double ExtremalProfile::u0(double x) const {
  check_range(x);
  const double ax = std::abs(x);
  const std::size_t k = locate(ax);
  const double h = x_[k + 1] - x_[k];
  return hermite(u_[k], du_[k], u_[k + 1], du_[k + 1], h, (ax - x_[k]) / h);
}

double ExtremalProfile::du0(double x) const {
  check_range(x);
  const double ax = std::abs(x);
  const std::size_t k = locate(ax);
  const double h = x_[k + 1] - x_[k];
  const double v = hermite(du_[k], -p_nodes_[k] * u_[k], du_[k + 1], -p_nodes_[k + 1] * u_[k + 1], h,
                           (ax - x_[k]) / h);
  return x < 0 ? -v : v;
}

double ExtremalProfile::phi(double x) const {
  check_range(x);
  const double ax = std::abs(x);
  const std::size_t k = locate(ax);
  const double h = x_[k + 1] - x_[k];
  const double v = hermite_monotone(phi_[k], phi1_[k], phi_[k + 1], phi1_[k + 1], h, (ax - x_[k]) / h);
  return x < 0 ? -v : v;
}

double ExtremalProfile::phi1(double x) const {
  check_range(x);
  const double ax = std::abs(x);
  const std::size_t k = locate(ax);
  const double h = x_[k + 1] - x_[k];
  return hermite_monotone(phi1_[k], phi2_[k], phi1_[k + 1], phi2_[k + 1], h, (ax - x_[k]) / h);
}

double ExtremalProfile::phi2(double x) const {
  const double u = u0(x);
  return -2.0 * du0(x) / (u * u * u);
}

double ExtremalProfile::rho(double r) const { return -2.0 * du0(r) / u0(r); }

double ExtremalProfile::rho1(double r) const {
  const double q = rho(r);
  return 2.0 * p_(r) + 0.5 * q * q;
}

double ExtremalProfile::A(double r) const {
  check_range(r);
  if (std::abs(r) < 1e-6) return p_(0.0);
  const double q = rho(std::abs(r));
  return 0.25 * q * q + q / (2.0 * std::abs(r));
}

double ExtremalProfile::abs_curvature(double r) const {
  const double f = phi1(r);
  return 2.0 * (A(r) + p_(r)) / (f * f);
}

double ExtremalProfile::phi_inverse(double s) const {
  const double as = std::abs(s);
  if (as > phi_.back() * (1.0 + 1e-15)) {
    std::ostringstream os;
    os << "Phi^-1 argument " << s << " exceeds Phi(rmax) = " << phi_.back();
    throw OutOfRange(os.str());
  }
  const auto it = std::upper_bound(phi_.begin(), phi_.end(), as);
  std::size_t k = it == phi_.begin() ? 0 : static_cast<std::size_t>(it - phi_.begin()) - 1;
  k = std::min(k, x_.size() - 2);
  double lo = x_[k], hi = x_[k + 1];
  double r = lo + (hi - lo) * (as - phi_[k]) / std::max(phi_[k + 1] - phi_[k], 1e-300);
  for (int it2 = 0; it2 < 60; ++it2) {
    const double f = phi(r) - as;
    if (f > 0) hi = r; else lo = r;
    double next = r - f / phi1(r);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) <= 1e-16 * std::max(1.0, r)) {
      r = next;
      break;
    }
    r = next;
  }
  return s < 0 ? -r : r;
}

DisconjugacyReport disconjugacy_check(const NehariFunction& p, double epsilon) {
  DisconjugacyReport rep;
  rep.epsilon = epsilon;
  const double a = -1.0 + epsilon, b = 1.0 - epsilon;
  const OdeRhs lin = [&p](double t, const State& y, State& dy) {
    dy[0] = y[1];
    dy[1] = -p(t) * y[0];
  };
  OdeOptions opts;
  opts.rtol = 1e-10;
  opts.atol = 1e-14;
  opts.initial_step = 1e-6;
  opts.max_step = 0.01;
  integrate_adaptive(lin, {0.0, 1.0}, {a, b}, opts,
                     [&](double t0, const State& y0, double t1, const State& y1) {
                       if (t0 > a && (y0[0] > 0.0) != (y1[0] > 0.0)) {
                         rep.zeros.push_back(hermite_root(t0, y0[0], y0[1], t1, y1[0], y1[1]));
                       }
                       return rep.zeros.size() < 64;
                     });
  rep.pass = rep.zeros.empty();
  std::ostringstream os;
  os << "numerical surrogate: zeros counted on [-1+eps, 1-eps] with eps = " << epsilon
     << "; not a proof of disconjugacy on (-1, 1)";
  rep.caveat = os.str();
  return rep;
}

double max_disconjugate_scale(const NehariFunction& p, double tol, double epsilon) {
  auto ok = [&](double t) { return disconjugacy_check(p.scaled(t), epsilon).pass; };
  double lo = 0.0, hi = 1.0;
  if (ok(1.0)) {
    lo = 1.0;
    hi = 2.0;
    while (ok(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e6) return std::numeric_limits<double>::infinity();
    }
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (ok(mid)) lo = mid; else hi = mid;
  }
  return lo;
}

LambdaResult lambda_limit(const NehariFunction& p) {
  std::vector<double> values;
  for (int k = 2; k <= 7; ++k) {
    const double eps = std::pow(10.0, -k);
    const double w = eps * (2.0 - eps);
    values.push_back(w * w * p(1.0 - eps));
  }
  std::vector<double> rich;
  for (std::size_t k = 0; k + 1 < values.size(); ++k) rich.push_back((10.0 * values[k + 1] - values[k]) / 9.0);
  const double last = rich.back(), prev = rich[rich.size() - 2];
  if (!std::isfinite(last) || std::abs(last - prev) > 1e-6) {
    std::ostringstream os;
    os << "extrapolants " << prev << " and " << last << " differ by more than 1e-6";
    throw NonconvergentLimit(os.str());
  }
  LambdaResult r;
  r.lambda = std::clamp(last, 0.0, 1.0);
  r.mu = 1.0 + std::sqrt(1.0 - r.lambda);
  return r;
}

}  // namespace schwarzlift
