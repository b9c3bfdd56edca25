#pragma once

#include <vector>

#include <Eigen/Dense>

namespace schwarzlift {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// A composition of rotations, translations, dilations, the inversion
/// x -> x / |x|^2, and special conformal maps
/// x -> (x + |x|^2 b) / (1 + 2<b,x> + |b|^2 |x|^2).
/// Primitives are applied in the order they were appended.
class SpaceMobius {
 public:
  enum class Kind { Rotation, Translation, Dilation, Inversion, SpecialConformal };

  struct Step {
    Kind kind;
    Mat3 rotation = Mat3::Identity();
    Vec3 vector = Vec3::Zero();
    double scale = 1.0;
  };

  static SpaceMobius identity() { return {}; }

  SpaceMobius& rotate(const Mat3& r);
  SpaceMobius& translate(const Vec3& t);
  SpaceMobius& dilate(double s);
  SpaceMobius& invert();
  SpaceMobius& special_conformal(const Vec3& b);
  /// this followed by other.
  SpaceMobius then(const SpaceMobius& other) const;

  /// Throws InversionPole at the pole of an inversion step.
  Vec3 apply(const Vec3& x) const;
  SpaceMobius inverse() const;
  /// Jacobian at x.
  Mat3 differential(const Vec3& x) const;
  /// Conformal scale factor |DT(x) v| / |v|.
  double scale(const Vec3& x) const;

  const std::vector<Step>& steps() const { return steps_; }

 private:
  std::vector<Step> steps_;
};

}  // namespace schwarzlift
