#pragma once

#include <Eigen/Core>

namespace hypcone {

using PlanePoint = Eigen::Vector2d;

/// Orientation-preserving isometry v -> N v + w of the Euclidean plane.
/// The rotation is kept as an angle; N is recomputed from it, so long
/// compositions never drift off SO(2).
class Se2Element {
 public:
  Se2Element() = default;
  Se2Element(double angle, PlanePoint translation);

  /// Rotation by `angle` about `centre`.
  static Se2Element rotation_about(const PlanePoint& centre, double angle);

  double angle() const { return angle_; }
  const Eigen::Matrix2d& rotation() const { return rotation_; }
  const PlanePoint& translation() const { return translation_; }

  PlanePoint apply(const PlanePoint& v) const { return rotation_ * v + translation_; }
  Se2Element inverse() const;
  Se2Element conjugate_by(const Se2Element& g) const { return g * (*this) * g.inverse(); }

  friend Se2Element operator*(const Se2Element& a, const Se2Element& b);

 private:
  double angle_ = 0.0;
  Eigen::Matrix2d rotation_ = Eigen::Matrix2d::Identity();
  PlanePoint translation_ = PlanePoint::Zero();
};

/// x = (1 - N)^{-1} w. Throws NotElliptic for pure translations.
PlanePoint se2_fixed_point(const Se2Element& s);
double se2_pair_distance(const Se2Element& s1, const Se2Element& s2);

/// Sign of x1^x2 + x2^x3 + x3^x1: +1 when x3 is left of the line x1 -> x2,
/// -1 when right, 0 when collinear.
int triple_orientation(const PlanePoint& x1, const PlanePoint& x2, const PlanePoint& x3);

}  // namespace hypcone
