#include "hypcone/se2.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numbers>

#include "hypcone/error.hpp"

namespace hypcone {

namespace {

Eigen::Matrix2d rotation_matrix(double angle) {
  Eigen::Matrix2d n;
  n << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return n;
}

double wrap_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(angle, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

double wedge(const PlanePoint& a, const PlanePoint& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

Se2Element::Se2Element(double angle, PlanePoint translation)
    : angle_(wrap_angle(angle)), rotation_(rotation_matrix(angle_)), translation_(std::move(translation)) {}

Se2Element Se2Element::rotation_about(const PlanePoint& centre, double angle) {
  const Eigen::Matrix2d n = rotation_matrix(angle);
  return {angle, centre - n * centre};
}

Se2Element Se2Element::inverse() const {
  return {-angle_, -(rotation_.transpose() * translation_)};
}

Se2Element operator*(const Se2Element& a, const Se2Element& b) {
  return {a.angle_ + b.angle_, a.rotation_ * b.translation_ + a.translation_};
}

PlanePoint se2_fixed_point(const Se2Element& s) {
  const double a = s.angle();
  if (std::min(a, 2.0 * std::numbers::pi - a) < 1e-12) {
    throw Error(ErrorKind::NotElliptic, "rotation part is the identity");
  }
  const Eigen::Matrix2d one_minus_n = Eigen::Matrix2d::Identity() - s.rotation();
  return one_minus_n.inverse() * s.translation();
}

double se2_pair_distance(const Se2Element& s1, const Se2Element& s2) {
  return (se2_fixed_point(s1) - se2_fixed_point(s2)).norm();
}

int triple_orientation(const PlanePoint& x1, const PlanePoint& x2, const PlanePoint& x3) {
  const double w = wedge(x1, x2) + wedge(x2, x3) + wedge(x3, x1);
  return (w > 0.0) - (w < 0.0);
}

}  // namespace hypcone
