#include "schwarzlift/space_mobius.hpp"

#include <cmath>
#include <sstream>

#include "schwarzlift/error.hpp"

namespace schwarzlift {

namespace {

constexpr double kPoleTol = 1e-14;

[[noreturn]] void pole(const Vec3& x) {
  std::ostringstream os;
  os.precision(17);
  os << "point (" << x.x() << ", " << x.y() << ", " << x.z() << ") is at the pole of an inversion";
  throw InversionPole(os.str());
}

double sc_denominator(const Vec3& b, const Vec3& x) {
  return 1.0 + 2.0 * b.dot(x) + b.squaredNorm() * x.squaredNorm();
}

Vec3 apply_step(const SpaceMobius::Step& s, const Vec3& x) {
  switch (s.kind) {
    case SpaceMobius::Kind::Rotation: return s.rotation * x;
    case SpaceMobius::Kind::Translation: return x + s.vector;
    case SpaceMobius::Kind::Dilation: return s.scale * x;
    case SpaceMobius::Kind::Inversion: {
      const double r2 = x.squaredNorm();
      if (r2 < kPoleTol * kPoleTol) pole(x);
      return x / r2;
    }
    case SpaceMobius::Kind::SpecialConformal: {
      const double d = sc_denominator(s.vector, x);
      if (std::abs(d) < kPoleTol) pole(x);
      return (x + x.squaredNorm() * s.vector) / d;
    }
  }
  return x;
}

Mat3 step_differential(const SpaceMobius::Step& s, const Vec3& x) {
  switch (s.kind) {
    case SpaceMobius::Kind::Rotation: return s.rotation;
    case SpaceMobius::Kind::Translation: return Mat3::Identity();
    case SpaceMobius::Kind::Dilation: return s.scale * Mat3::Identity();
    case SpaceMobius::Kind::Inversion: {
      const double r2 = x.squaredNorm();
      if (r2 < kPoleTol * kPoleTol) pole(x);
      return (Mat3::Identity() - 2.0 * x * x.transpose() / r2) / r2;
    }
    case SpaceMobius::Kind::SpecialConformal: {
      const Vec3& b = s.vector;
      const double d = sc_denominator(b, x);
      if (std::abs(d) < kPoleTol) pole(x);
      const Vec3 num = x + x.squaredNorm() * b;
      const Mat3 dnum = Mat3::Identity() + 2.0 * b * x.transpose();
      const Vec3 dd = 2.0 * b + 2.0 * b.squaredNorm() * x;
      return (dnum * d - num * dd.transpose()) / (d * d);
    }
  }
  return Mat3::Identity();
}

}  // namespace

SpaceMobius& SpaceMobius::rotate(const Mat3& r) {
  steps_.push_back({Kind::Rotation, r});
  return *this;
}

SpaceMobius& SpaceMobius::translate(const Vec3& t) {
  steps_.push_back({Kind::Translation, Mat3::Identity(), t});
  return *this;
}

SpaceMobius& SpaceMobius::dilate(double s) {
  if (s == 0.0) throw DegenerateInput("dilation by zero");
  steps_.push_back({Kind::Dilation, Mat3::Identity(), Vec3::Zero(), s});
  return *this;
}

SpaceMobius& SpaceMobius::invert() {
  steps_.push_back({Kind::Inversion});
  return *this;
}

SpaceMobius& SpaceMobius::special_conformal(const Vec3& b) {
  steps_.push_back({Kind::SpecialConformal, Mat3::Identity(), b});
  return *this;
}

SpaceMobius SpaceMobius::then(const SpaceMobius& other) const {
  SpaceMobius out = *this;
  out.steps_.insert(out.steps_.end(), other.steps_.begin(), other.steps_.end());
  return out;
}

Vec3 SpaceMobius::apply(const Vec3& x) const {
  Vec3 y = x;
  for (const auto& s : steps_) y = apply_step(s, y);
  return y;
}

SpaceMobius SpaceMobius::inverse() const {
  SpaceMobius out;
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    switch (it->kind) {
      case Kind::Rotation: out.rotate(it->rotation.transpose()); break;
      case Kind::Translation: out.translate(-it->vector); break;
      case Kind::Dilation: out.dilate(1.0 / it->scale); break;
      case Kind::Inversion: out.invert(); break;
      case Kind::SpecialConformal: out.special_conformal(-it->vector); break;
    }
  }
  return out;
}

Mat3 SpaceMobius::differential(const Vec3& x) const {
  Mat3 j = Mat3::Identity();
  Vec3 y = x;
  for (const auto& s : steps_) {
    j = step_differential(s, y) * j;
    y = apply_step(s, y);
  }
  return j;
}

double SpaceMobius::scale(const Vec3& x) const {
  // A conformal Jacobian is a scaled rotation: |J e1| is its scale.
  return differential(x).col(0).norm();
}

}  // namespace schwarzlift
