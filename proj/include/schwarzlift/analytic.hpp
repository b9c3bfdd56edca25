#pragma once

#include <memory>
#include <string>

#include "schwarzlift/jets.hpp"

namespace schwarzlift {

namespace detail {
struct Node;
}

/// An analytic function built from a closed expression grammar: constants,
/// the identity, + - * /, composition, exp, principal log, principal power
/// z^alpha, and the antiderivative with a base point. Evaluation propagates
/// exact third-order jets through the tree; no finite differences are used.
///
/// Values are immutable and cheap to copy (shared expression tree), so they
/// can be evaluated concurrently.
class AnalyticFn {
 public:
  /// The identity function z.
  AnalyticFn();

  static AnalyticFn constant(cplx c);
  static AnalyticFn identity();

  /// Jet (f, f', f'', f''') at z. Throws DomainError naming the offending
  /// sub-expression when z hits a pole or a branch cut.
  Jet3 eval(cplx z) const;
  cplx value(cplx z) const { return eval(z).f0; }
  bool in_domain(cplx z) const;

  std::string str() const;

  friend AnalyticFn operator+(const AnalyticFn& a, const AnalyticFn& b);
  friend AnalyticFn operator-(const AnalyticFn& a, const AnalyticFn& b);
  friend AnalyticFn operator*(const AnalyticFn& a, const AnalyticFn& b);
  friend AnalyticFn operator/(const AnalyticFn& a, const AnalyticFn& b);
  friend AnalyticFn operator-(const AnalyticFn& a);

  /// outer(inner(z)).
  friend AnalyticFn compose(const AnalyticFn& outer, const AnalyticFn& inner);
  friend AnalyticFn exp(const AnalyticFn& a);
  /// Principal branch; the cut (-inf, 0] is outside the domain.
  friend AnalyticFn log(const AnalyticFn& a);
  /// Principal branch a^alpha. Integer real exponents have no cut.
  friend AnalyticFn pow(const AnalyticFn& a, cplx alpha);
  /// z -> integral of a from base to z along the straight segment.
  friend AnalyticFn integral(const AnalyticFn& a, cplx base);

 private:
  explicit AnalyticFn(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::Node> node_;
};

inline AnalyticFn operator+(const AnalyticFn& a, cplx c) { return a + AnalyticFn::constant(c); }
inline AnalyticFn operator+(cplx c, const AnalyticFn& a) { return AnalyticFn::constant(c) + a; }
inline AnalyticFn operator-(const AnalyticFn& a, cplx c) { return a - AnalyticFn::constant(c); }
inline AnalyticFn operator-(cplx c, const AnalyticFn& a) { return AnalyticFn::constant(c) - a; }
inline AnalyticFn operator*(cplx c, const AnalyticFn& a) { return AnalyticFn::constant(c) * a; }
inline AnalyticFn operator*(const AnalyticFn& a, cplx c) { return a * AnalyticFn::constant(c); }
inline AnalyticFn operator/(const AnalyticFn& a, cplx c) { return a / AnalyticFn::constant(c); }
inline AnalyticFn operator/(cplx c, const AnalyticFn& a) { return AnalyticFn::constant(c) / a; }

// Derived building blocks, all expressed inside the grammar.
AnalyticFn sqrt(const AnalyticFn& a);
AnalyticFn sin(const AnalyticFn& a);
AnalyticFn cos(const AnalyticFn& a);
AnalyticFn tan(const AnalyticFn& a);
AnalyticFn sinh(const AnalyticFn& a);
AnalyticFn cosh(const AnalyticFn& a);
AnalyticFn tanh(const AnalyticFn& a);
/// 1/2 log((1+a)/(1-a)).
AnalyticFn atanh(const AnalyticFn& a);
/// (a z + b) / (c z + d).
AnalyticFn mobius(cplx a, cplx b, cplx c, cplx d);

/// Classical Schwarzian of f at z.
cplx schwarzian(const AnalyticFn& f, cplx z);

/// |S(g o f)(z) - S(g)(f(z)) f'(z)^2 - S(f)(z)|, with S(g o f) computed from
/// the composed expression tree.
double chain_rule_residual(const AnalyticFn& g, const AnalyticFn& f, cplx z);

}  // namespace schwarzlift
