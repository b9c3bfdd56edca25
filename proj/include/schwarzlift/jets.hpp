#pragma once

#include <complex>
#include <numbers>

namespace schwarzlift {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Value and first three complex derivatives of an analytic function at a
/// fixed point. All arithmetic follows the Leibniz / Faa di Bruno rules
/// truncated at order three, so jets compose exactly.
struct Jet3 {
  cplx f0{};
  cplx f1{};
  cplx f2{};
  cplx f3{};

  static Jet3 constant(cplx c) { return {c, 0.0, 0.0, 0.0}; }
  static Jet3 variable(cplx z) { return {z, 1.0, 0.0, 0.0}; }

  Jet3 operator-() const { return {-f0, -f1, -f2, -f3}; }
  Jet3& operator+=(const Jet3& o) {
    f0 += o.f0; f1 += o.f1; f2 += o.f2; f3 += o.f3;
    return *this;
  }
  Jet3& operator-=(const Jet3& o) {
    f0 -= o.f0; f1 -= o.f1; f2 -= o.f2; f3 -= o.f3;
    return *this;
  }
};

inline Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
inline Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }

inline Jet3 operator*(const Jet3& a, const Jet3& b) {
  return {a.f0 * b.f0,
          a.f1 * b.f0 + a.f0 * b.f1,
          a.f2 * b.f0 + 2.0 * a.f1 * b.f1 + a.f0 * b.f2,
          a.f3 * b.f0 + 3.0 * a.f2 * b.f1 + 3.0 * a.f1 * b.f2 + a.f0 * b.f3};
}

inline Jet3 operator*(cplx s, const Jet3& a) { return {s * a.f0, s * a.f1, s * a.f2, s * a.f3}; }

/// Jet of outer(inner(z)), where `outer` is the jet of the outer function taken
/// at inner.f0.
inline Jet3 compose(const Jet3& outer, const Jet3& inner) {
  const cplx u1 = inner.f1, u2 = inner.f2, u3 = inner.f3;
  return {outer.f0,
          outer.f1 * u1,
          outer.f2 * u1 * u1 + outer.f1 * u2,
          outer.f3 * u1 * u1 * u1 + 3.0 * outer.f2 * u1 * u2 + outer.f1 * u3};
}

/// Reciprocal. Caller guarantees a.f0 != 0.
inline Jet3 reciprocal(const Jet3& a) {
  const cplx w = a.f0;
  const cplx r = 1.0 / w;
  const Jet3 outer{r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r};
  return compose(outer, a);
}

inline Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }

/// Default |f'| threshold below which a point counts as critical.
inline constexpr double kCriticalTol = 1e-14;

/// Classical Schwarzian f'''/f' - 3/2 (f''/f')^2. Throws CriticalPoint when
/// |f'| <= tol.
cplx classical_schwarzian(const Jet3& j, double tol = kCriticalTol);

}  // namespace schwarzlift
