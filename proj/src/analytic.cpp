#include "schwarzlift/analytic.hpp"

#include <cmath>
#include <sstream>

#include "schwarzlift/error.hpp"
#include "schwarzlift/quadrature.hpp"

namespace schwarzlift {

namespace detail {

struct Node {
  virtual ~Node() = default;
  virtual Jet3 eval(cplx z) const = 0;
  virtual std::string str() const = 0;
};

}  // namespace detail

namespace {

using detail::Node;
using NodePtr = std::shared_ptr<const Node>;

std::string fmt(cplx c) {
  std::ostringstream os;
  os.precision(17);
  if (c.imag() == 0.0) {
    os << c.real();
  } else if (c.real() == 0.0) {
    os << c.imag() << "*i";
  } else {
    os << "(" << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "*i)";
  }
  return os.str();
}

bool finite(cplx w) { return std::isfinite(w.real()) && std::isfinite(w.imag()); }

bool finite(const Jet3& j) { return finite(j.f0) && finite(j.f1) && finite(j.f2) && finite(j.f3); }

[[noreturn]] void domain_fail(const std::string& what, const Node& node, cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << what << " in sub-expression " << node.str() << " at z = " << z;
  throw DomainError(os.str());
}

struct ConstNode : Node {
  cplx c;
  explicit ConstNode(cplx v) : c(v) {}
  Jet3 eval(cplx) const override { return Jet3::constant(c); }
  std::string str() const override { return fmt(c); }
};

struct IdentityNode : Node {
  Jet3 eval(cplx z) const override { return Jet3::variable(z); }
  std::string str() const override { return "z"; }
};

enum class BinOp { Add, Sub, Mul, Div };

struct BinaryNode : Node {
  BinOp op;
  NodePtr a, b;
  BinaryNode(BinOp o, NodePtr x, NodePtr y) : op(o), a(std::move(x)), b(std::move(y)) {}
  Jet3 eval(cplx z) const override {
    const Jet3 x = a->eval(z);
    const Jet3 y = b->eval(z);
    switch (op) {
      case BinOp::Add: return x + y;
      case BinOp::Sub: return x - y;
      case BinOp::Mul: return x * y;
      case BinOp::Div: {
        if (y.f0 == cplx(0.0)) domain_fail("division by zero", *this, z);
        const Jet3 r = x / y;
        if (!finite(r)) domain_fail("division overflow", *this, z);
        return r;
      }
    }
    return {};
  }
  std::string str() const override {
    const char* sym = op == BinOp::Add ? " + " : op == BinOp::Sub ? " - " : op == BinOp::Mul ? "*" : "/";
    return "(" + a->str() + sym + b->str() + ")";
  }
};

struct NegNode : Node {
  NodePtr a;
  explicit NegNode(NodePtr x) : a(std::move(x)) {}
  Jet3 eval(cplx z) const override { return -a->eval(z); }
  std::string str() const override { return "(-" + a->str() + ")"; }
};

struct ComposeNode : Node {
  NodePtr outer, inner;
  ComposeNode(NodePtr o, NodePtr i) : outer(std::move(o)), inner(std::move(i)) {}
  Jet3 eval(cplx z) const override {
    const Jet3 u = inner->eval(z);
    return compose(outer->eval(u.f0), u);
  }
  std::string str() const override { return "[" + outer->str() + "](" + inner->str() + ")"; }
};

struct ExpNode : Node {
  NodePtr a;
  explicit ExpNode(NodePtr x) : a(std::move(x)) {}
  Jet3 eval(cplx z) const override {
    const Jet3 u = a->eval(z);
    const cplx e = std::exp(u.f0);
    if (!finite(e)) domain_fail("exp overflow", *this, z);
    return compose({e, e, e, e}, u);
  }
  std::string str() const override { return "exp(" + a->str() + ")"; }
};

void check_cut(const Jet3& u, const Node& node, cplx z, const char* name) {
  const cplx w = u.f0;
  if (w == cplx(0.0)) domain_fail(std::string(name) + " of zero", node, z);
  if (w.imag() == 0.0 && w.real() < 0.0)
    domain_fail(std::string(name) + " argument on the branch cut (-inf, 0]", node, z);
}

struct LogNode : Node {
  NodePtr a;
  explicit LogNode(NodePtr x) : a(std::move(x)) {}
  Jet3 eval(cplx z) const override {
    const Jet3 u = a->eval(z);
    check_cut(u, *this, z, "log");
    const cplx r = 1.0 / u.f0;
    return compose({std::log(u.f0), r, -r * r, 2.0 * r * r * r}, u);
  }
  std::string str() const override { return "log(" + a->str() + ")"; }
};

struct PowNode : Node {
  NodePtr a;
  cplx alpha;
  PowNode(NodePtr x, cplx al) : a(std::move(x)), alpha(al) {}
  bool integer_exponent() const {
    return alpha.imag() == 0.0 && alpha.real() == std::round(alpha.real()) &&
           std::abs(alpha.real()) < 1e6;
  }
  Jet3 eval(cplx z) const override {
    const Jet3 u = a->eval(z);
    const cplx w = u.f0;
    cplx p;
    if (integer_exponent()) {
      const int n = static_cast<int>(alpha.real());
      if (n == 0) return Jet3::constant(1.0);
      if (n < 0 && w == cplx(0.0)) domain_fail("negative power of zero", *this, z);
      if (n > 0 && n <= 3) {
        // Direct polynomial jet keeps w = 0 admissible.
        const double dn = n;
        cplx wn1 = n >= 1 ? std::pow(w, n - 1) : 0.0;
        cplx wn2 = n >= 2 ? std::pow(w, n - 2) : 0.0;
        cplx wn3 = n >= 3 ? cplx(1.0) : cplx(0.0);
        return compose({std::pow(w, n), dn * wn1, dn * (dn - 1) * wn2, dn * (dn - 1) * (dn - 2) * wn3},
                       u);
      }
      if (w == cplx(0.0)) return compose({0.0, 0.0, 0.0, 0.0}, u);
      p = std::pow(w, n);
    } else {
      check_cut(u, *this, z, "power");
      p = std::exp(alpha * std::log(w));
    }
    const cplx r = 1.0 / w;
    const Jet3 outer{p, alpha * p * r, alpha * (alpha - 1.0) * p * r * r,
                     alpha * (alpha - 1.0) * (alpha - 2.0) * p * r * r * r};
    if (!finite(outer)) domain_fail("power overflow", *this, z);
    return compose(outer, u);
  }
  std::string str() const override { return "(" + a->str() + ")^" + fmt(alpha); }
};

struct IntegralNode : Node {
  NodePtr a;
  cplx base;
  IntegralNode(NodePtr x, cplx b) : a(std::move(x)), base(b) {}
  Jet3 eval(cplx z) const override {
    const Jet3 end = a->eval(z);
    QuadratureOptions opts;
    opts.abs_tol = 1e-13;
    opts.rel_tol = 1e-14;
    cplx value;
    try {
      value = integrate_segment([&](cplx w) { return a->eval(w).f0; }, base, z, opts).value;
    } catch (const DomainError& e) {
      domain_fail(std::string("integration path leaves the domain (") + e.what() + ")", *this, z);
    } catch (const QuadratureError&) {
      // Near endpoint singularities the tight tolerance may be unreachable;
      // fall back to the library default.
      value = integrate_segment([&](cplx w) { return a->eval(w).f0; }, base, z).value;
    }
    return {value, end.f0, end.f1, end.f2};
  }
  std::string str() const override { return "int(" + a->str() + ", " + fmt(base) + ")"; }
};

}  // namespace

AnalyticFn::AnalyticFn() : node_(std::make_shared<IdentityNode>()) {}

AnalyticFn AnalyticFn::constant(cplx c) { return AnalyticFn(std::make_shared<ConstNode>(c)); }

AnalyticFn AnalyticFn::identity() { return AnalyticFn(); }

Jet3 AnalyticFn::eval(cplx z) const { return node_->eval(z); }

bool AnalyticFn::in_domain(cplx z) const {
  try {
    node_->eval(z);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

std::string AnalyticFn::str() const { return node_->str(); }

AnalyticFn operator+(const AnalyticFn& a, const AnalyticFn& b) {
  return AnalyticFn(std::make_shared<BinaryNode>(BinOp::Add, a.node_, b.node_));
}
AnalyticFn operator-(const AnalyticFn& a, const AnalyticFn& b) {
  return AnalyticFn(std::make_shared<BinaryNode>(BinOp::Sub, a.node_, b.node_));
}
AnalyticFn operator*(const AnalyticFn& a, const AnalyticFn& b) {
  return AnalyticFn(std::make_shared<BinaryNode>(BinOp::Mul, a.node_, b.node_));
}
AnalyticFn operator/(const AnalyticFn& a, const AnalyticFn& b) {
  return AnalyticFn(std::make_shared<BinaryNode>(BinOp::Div, a.node_, b.node_));
}
AnalyticFn operator-(const AnalyticFn& a) { return AnalyticFn(std::make_shared<NegNode>(a.node_)); }

AnalyticFn compose(const AnalyticFn& outer, const AnalyticFn& inner) {
  return AnalyticFn(std::make_shared<ComposeNode>(outer.node_, inner.node_));
}
AnalyticFn exp(const AnalyticFn& a) { return AnalyticFn(std::make_shared<ExpNode>(a.node_)); }
AnalyticFn log(const AnalyticFn& a) { return AnalyticFn(std::make_shared<LogNode>(a.node_)); }
AnalyticFn pow(const AnalyticFn& a, cplx alpha) {
  return AnalyticFn(std::make_shared<PowNode>(a.node_, alpha));
}
AnalyticFn integral(const AnalyticFn& a, cplx base) {
  return AnalyticFn(std::make_shared<IntegralNode>(a.node_, base));
}

namespace {
const cplx I(0.0, 1.0);
}

AnalyticFn sqrt(const AnalyticFn& a) { return pow(a, 0.5); }
AnalyticFn sin(const AnalyticFn& a) { return (exp(I * a) - exp(-I * a)) / (2.0 * I); }
AnalyticFn cos(const AnalyticFn& a) { return (exp(I * a) + exp(-I * a)) / cplx(2.0); }
AnalyticFn tan(const AnalyticFn& a) { return sin(a) / cos(a); }
AnalyticFn sinh(const AnalyticFn& a) { return (exp(a) - exp(-a)) / cplx(2.0); }
AnalyticFn cosh(const AnalyticFn& a) { return (exp(a) + exp(-a)) / cplx(2.0); }
AnalyticFn tanh(const AnalyticFn& a) { return sinh(a) / cosh(a); }
AnalyticFn atanh(const AnalyticFn& a) { return 0.5 * log((1.0 + a) / (1.0 - a)); }

AnalyticFn mobius(cplx a, cplx b, cplx c, cplx d) {
  const AnalyticFn z;
  if (c == cplx(0.0)) return (a / d) * z + b / d;
  return (a * z + b) / (c * z + d);
}

cplx classical_schwarzian(const Jet3& j, double tol) {
  if (std::abs(j.f1) <= tol) {
    std::ostringstream os;
    os << "critical point: |f'| = " << std::abs(j.f1) << " <= " << tol;
    throw CriticalPoint(os.str());
  }
  const cplx r = j.f2 / j.f1;
  return j.f3 / j.f1 - 1.5 * r * r;
}

cplx schwarzian(const AnalyticFn& f, cplx z) { return classical_schwarzian(f.eval(z)); }

double chain_rule_residual(const AnalyticFn& g, const AnalyticFn& f, cplx z) {
  const Jet3 jf = f.eval(z);
  const cplx sgf = schwarzian(compose(g, f), z);
  const cplx sg = schwarzian(g, jf.f0);
  const cplx sf = classical_schwarzian(jf);
  return std::abs(sgf - sg * jf.f1 * jf.f1 - sf);
}

}  // namespace schwarzlift
