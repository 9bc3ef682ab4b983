#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hypcone/error.hpp"
#include "hypcone/se2.hpp"

using namespace hypcone;
using doctest::Approx;

TEST_CASE("flat fixed points") {
  const Se2Element half_turn(std::numbers::pi, PlanePoint(2.0, 0.0));
  const PlanePoint x = se2_fixed_point(half_turn);
  CHECK((x - PlanePoint(1.0, 0.0)).norm() < 1e-15);
  CHECK_THROWS_AS(se2_fixed_point(Se2Element(0.0, PlanePoint(1.0, 2.0))), Error);
  CHECK_THROWS_AS(se2_fixed_point(Se2Element(2.0 * std::numbers::pi, PlanePoint(1.0, 2.0))), Error);

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-5.0, 5.0), angle(0.05, 6.2);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Se2Element s(angle(rng), PlanePoint(u(rng), u(rng)));
    const PlanePoint p = se2_fixed_point(s);
    worst = std::max(worst, (s.apply(p) - p).norm() / std::max(1.0, p.norm()));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("fixed points follow conjugation") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-3.0, 3.0), angle(0.1, 6.1);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Se2Element s(angle(rng), PlanePoint(u(rng), u(rng)));
    const Se2Element g(angle(rng), PlanePoint(u(rng), u(rng)));
    worst = std::max(worst, (se2_fixed_point(s.conjugate_by(g)) - g.apply(se2_fixed_point(s))).norm());
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("flat pair distance") {
  const Se2Element s = Se2Element::rotation_about(PlanePoint(1.0, -2.0), 0.7);
  CHECK(se2_pair_distance(s, s) == 0.0);
  const Se2Element a = Se2Element::rotation_about(PlanePoint(0.0, 0.0), std::numbers::pi / 3);
  const Se2Element b = Se2Element::rotation_about(PlanePoint(3.0, 4.0), std::numbers::pi / 3);
  CHECK(se2_pair_distance(a, b) == Approx(5.0).epsilon(1e-14));
  const Se2Element g(2.1, PlanePoint(-7.0, 0.5));
  CHECK(std::abs(se2_pair_distance(a.conjugate_by(g), b.conjugate_by(g)) - 5.0) < 1e-12);
}

TEST_CASE("triple orientation") {
  const PlanePoint o(0.0, 0.0), x(1.0, 0.0), y(0.0, 1.0);
  CHECK(triple_orientation(o, x, y) == 1);
  CHECK(triple_orientation(o, x, PlanePoint(2.0, 0.0)) == 0);
  CHECK(triple_orientation(x, o, y) == -1);

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-4.0, 4.0), angle(0.0, 6.28);
  for (int k = 0; k < 200; ++k) {
    const PlanePoint p(u(rng), u(rng)), q(u(rng), u(rng)), r(u(rng), u(rng));
    const int sign = triple_orientation(p, q, r);
    const Se2Element g(angle(rng), PlanePoint(u(rng), u(rng)));
    CHECK(triple_orientation(g.apply(p), g.apply(q), g.apply(r)) == sign);
    const auto mirror = [](const PlanePoint& v) { return PlanePoint(v.x(), -v.y()); };
    CHECK(triple_orientation(mirror(p), mirror(q), mirror(r)) == -sign);
  }
}

TEST_CASE("composition keeps the rotation orthogonal") {
  Se2Element s(0.3, PlanePoint(0.1, 0.2));
  for (int k = 0; k < 10000; ++k) s = s * Se2Element(0.77, PlanePoint(0.01, -0.02));
  const Eigen::Matrix2d n = s.rotation();
  CHECK((n.transpose() * n - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}
