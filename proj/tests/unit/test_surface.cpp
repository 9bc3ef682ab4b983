#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "corpus.hpp"
#include "doctest.h"
#include "hypcone/error.hpp"
#include "hypcone/surface.hpp"

using namespace hypcone;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorKind build_error(const std::string& json) {
  try {
    ConeSurface::build(parse_surface(json));
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected build to fail");
  return ErrorKind::ParseError;
}

std::string two_triangles(const std::string& t1, const std::string& t2, double a = 1.0, double b = 1.0,
                          double c = 1.0) {
  return R"({"edges": [{"id": "a", "length": )" + std::to_string(a) + R"(}, {"id": "b", "length": )" +
         std::to_string(b) + R"(}, {"id": "c", "length": )" + std::to_string(c) +
         R"(}], "triangles": [{"sides": )" + t1 + R"(}, {"sides": )" + t2 + "}]}";
}

const std::string kForward = R"([{"edge": "a", "dir": "+"}, {"edge": "b", "dir": "+"}, {"edge": "c", "dir": "+"}])";
const std::string kTorusBack = R"([{"edge": "a", "dir": "-"}, {"edge": "b", "dir": "-"}, {"edge": "c", "dir": "-"}])";
const std::string kSphereBack = R"([{"edge": "c", "dir": "-"}, {"edge": "b", "dir": "-"}, {"edge": "a", "dir": "-"}])";

}  // namespace

TEST_CASE("building the two basic gluings") {
  const ConeSurface torus = ConeSurface::build(parse_surface(two_triangles(kForward, kTorusBack)));
  CHECK(torus.genus() == 1);
  CHECK(torus.vertex_count() == 1);
  CHECK(torus.edge_count() == 3);
  const ConeSurface sphere = ConeSurface::build(parse_surface(two_triangles(kForward, kSphereBack)));
  CHECK(sphere.genus() == 0);
  CHECK(sphere.vertex_count() == 3);
  CHECK(sphere.edge_count() == 3);
}

TEST_CASE("corpus topology") {
  struct Expect {
    const char* name;
    int g, n, N;
  };
  for (const Expect& e : {Expect{"torus_equilateral.json", 1, 1, 3}, Expect{"torus_scalene.json", 1, 1, 3},
                          Expect{"sphere3.json", 0, 3, 3}, Expect{"tetrahedron.json", 0, 4, 6},
                          Expect{"torus2.json", 1, 2, 6}}) {
    const ConeSurface s = load_corpus(e.name);
    CHECK(s.genus() == e.g);
    CHECK(s.vertex_count() == e.n);
    CHECK(s.edge_count() == e.N);
    CHECK(s.edge_count() == 6 * e.g - 6 + 3 * e.n);
  }
}

TEST_CASE("build errors") {
  CHECK(build_error(two_triangles(kForward, kTorusBack, 1.0, 1.0, 10.0)) == ErrorKind::TriangleInequality);
  CHECK(build_error(two_triangles(kForward, kTorusBack, 1.0, -1.0, 1.0)) == ErrorKind::NonPositiveLength);
  CHECK(build_error(two_triangles(kForward, kForward)) == ErrorKind::NonManifold);
  CHECK(build_error(two_triangles(kForward,
                                  R"([{"edge": "a", "dir": "-"}, {"edge": "b", "dir": "-"}, {"edge": "z", "dir": "-"}])")) ==
        ErrorKind::NonManifold);
  CHECK(build_error(R"({"edges": [{"id": "a", "length": 1}, {"id": "b", "length": 1}, {"id": "c", "length": 1},
                                   {"id": "d", "length": 1}, {"id": "e", "length": 1}, {"id": "f", "length": 1}],
                        "triangles": [
     {"sides": [{"edge": "a", "dir": "+"}, {"edge": "b", "dir": "+"}, {"edge": "c", "dir": "+"}]},
     {"sides": [{"edge": "c", "dir": "-"}, {"edge": "b", "dir": "-"}, {"edge": "a", "dir": "-"}]},
     {"sides": [{"edge": "d", "dir": "+"}, {"edge": "e", "dir": "+"}, {"edge": "f", "dir": "+"}]},
     {"sides": [{"edge": "f", "dir": "-"}, {"edge": "e", "dir": "-"}, {"edge": "d", "dir": "-"}]}]})") ==
        ErrorKind::Disconnected);
  CHECK(build_error("not json") == ErrorKind::ParseError);
  CHECK(build_error(R"({"edges": []})") == ErrorKind::ParseError);
  CHECK(build_error(two_triangles(kForward,
                                  R"([{"edge": "a", "dir": "?"}, {"edge": "b", "dir": "-"}, {"edge": "c", "dir": "-"}])")) ==
        ErrorKind::ParseError);
  CHECK(build_error(R"({"edges": [{"id": "a", "length": 1}, {"id": "a", "length": 1}], "triangles": []})") ==
        ErrorKind::NonManifold);
}

TEST_CASE("triangle inequality message names the triangle") {
  try {
    ConeSurface::build(parse_surface(two_triangles(kForward, kTorusBack, 1.0, 1.0, 10.0)));
    FAIL("expected TriangleInequality");
  } catch (const Error& e) {
    const std::string what = e.what();
    CHECK(what.find("triangle 0") != std::string::npos);
    CHECK(what.find("a+") != std::string::npos);
  }
}

TEST_CASE("corner angles") {
  const double a = std::acosh(3.0);
  CHECK(corner_angle(a, a, a) == Approx(0.7227342478134157).epsilon(1e-14));
  CHECK(std::abs(corner_angle(1e-4, 1e-4, 1e-4) - kPi / 3) < 1e-6);
  CHECK_THROWS_AS(corner_angle(1.0, 1.0, 2.0), Error);
  CHECK_THROWS_AS(corner_angle(1.0, 0.0, 1.0), Error);

  for (double x = 0.3; x < 2.5; x += 0.4) {
    for (double y = 0.3; y < 2.5; y += 0.4) {
      double last = 0.0;
      for (double c = std::abs(x - y) + 0.01; c < x + y; c += 0.05) {
        const double gamma = corner_angle(x, y, c);
        CHECK(gamma == Approx(corner_angle(y, x, c)).epsilon(1e-14));
        CHECK(gamma > last);
        last = gamma;
        const double sum = gamma + corner_angle(y, c, x) + corner_angle(c, x, y);
        CHECK(sum < kPi);
      }
    }
  }
}

TEST_CASE("corner angle gradient matches finite differences") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.3, 2.0);
  int checked = 0;
  while (checked < 200) {
    const double a = u(rng), b = u(rng), c = u(rng);
    if (!(a < b + c - 0.05 && b < a + c - 0.05 && c < a + b - 0.05)) continue;
    const auto g = corner_angle_gradient(a, b, c);
    const double h = 1e-6;
    const double fd[3] = {(corner_angle(a + h, b, c) - corner_angle(a - h, b, c)) / (2 * h),
                          (corner_angle(a, b + h, c) - corner_angle(a, b - h, c)) / (2 * h),
                          (corner_angle(a, b, c + h) - corner_angle(a, b, c - h)) / (2 * h)};
    for (int k = 0; k < 3; ++k) CHECK(std::abs(g[k] - fd[k]) < 1e-6 * std::max(1.0, std::abs(fd[k])));
    ++checked;
  }
}

TEST_CASE("cone angles") {
  SUBCASE("symmetric sphere") {
    const ConeSurface s = ConeSurface::build(parse_surface(two_triangles(kForward, kSphereBack)));
    for (int v = 0; v < 3; ++v) CHECK(s.cone_angle(v) == Approx(2.0 * corner_angle(1.0, 1.0, 1.0)).epsilon(1e-14));
  }
  SUBCASE("sphere3 corpus values") {
    const ConeSurface s = load_corpus("sphere3.json");
    CHECK(s.cone_angle(0) == Approx(1.5237682037512306).epsilon(1e-13));
    CHECK(s.cone_angle(1) == Approx(1.7538009752412775).epsilon(1e-13));
    CHECK(s.cone_angle(2) == Approx(1.3342248667916112).epsilon(1e-13));
  }
  SUBCASE("shrinking the sphere approaches the Euclidean angle sum") {
    const ConeSurface s = ConeSurface::build(parse_surface(two_triangles(kForward, kSphereBack, 1e-4, 1.2e-4, 1.5e-4)));
    const AngleData d = cone_angles(s);
    CHECK(std::abs(d.theta[0] + d.theta[1] + d.theta[2] - 2 * kPi) < 1e-7);
  }
  SUBCASE("equilateral torus") {
    const ConeSurface s = load_corpus("torus_equilateral.json");
    CHECK(s.cone_angle(0) == Approx(5.512787233068164).epsilon(1e-13));
    const double ch = std::cosh(1.0);
    CHECK(s.cone_angle(0) == Approx(6.0 * std::acos(ch / (ch + 1.0))).epsilon(1e-13));
  }
}

TEST_CASE("classify_angles") {
  const StratumReport punctured = classify_angles({{0.0}, 1, 1});
  CHECK(punctured.chi == -1.0);
  CHECK(punctured.hyperbolic);
  CHECK(punctured.generic);
  CHECK(punctured.small);
  CHECK_THROWS_AS(classify_angles({{kPi, kPi, kPi}, 0, 3}), Error);
  try {
    classify_angles({{kPi, kPi, kPi}, 0, 3});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAdmissible);
    CHECK(std::string(e.what()).find("0.5") != std::string::npos);
  }
  const StratumReport flat = classify_angles({{kPi, kPi, kPi, kPi}, 0, 4});
  CHECK(flat.flat);
  CHECK(!flat.hyperbolic);
  CHECK(std::abs(flat.chi) < 1e-15);
  const StratumReport wall = classify_angles({{2 * kPi, 1.0}, 1, 2});
  CHECK(!wall.generic);
  CHECK(!wall.small);
  CHECK_THROWS_AS(classify_angles({{1.0}, 1, 2}), Error);
}

TEST_CASE("Gauss-Bonnet on the corpus") {
  for (const auto& name : corpus_names()) {
    const ConeSurface s = load_corpus(name);
    const StratumReport r = classify_angles(s.angle_data());
    CHECK(s.area() > 0.0);
    CHECK(s.area() == Approx(-2.0 * kPi * r.chi).epsilon(1e-8));
  }
}

TEST_CASE("vertex fans") {
  const ConeSurface torus = load_corpus("torus_equilateral.json");
  const auto& fan = torus.fans().at(0);
  CHECK(fan.germs.size() == 6);
  for (double corner : fan.corner_angles) CHECK(corner == Approx(fan.total / 6).epsilon(1e-13));

  for (const auto& name : corpus_names()) {
    const ConeSurface s = load_corpus(name);
    for (const VertexFan& f : s.fans()) {
      double sum = 0.0;
      for (double c : f.corner_angles) {
        CHECK(c > 0.0);
        CHECK(c < kPi);
        sum += c;
      }
      CHECK(std::abs(sum - f.total) < 1e-10);
      for (std::size_t k = 1; k < f.cumulative.size(); ++k) CHECK(f.cumulative[k] > f.cumulative[k - 1]);
      const int m = static_cast<int>(f.germs.size());
      for (int i = 0; i < m; ++i) {
        CHECK(f.clockwise_angle(i, i) == 0.0);
        for (int j = 0; j < m; ++j) {
          if (i != j) CHECK(std::abs(f.clockwise_angle(i, j) + f.clockwise_angle(j, i) - f.total) < 1e-10);
        }
      }
      std::set<HalfEdge> seen(f.germs.begin(), f.germs.end());
      CHECK(seen.size() == f.germs.size());
    }
  }
}

TEST_CASE("collar constant") {
  CHECK(collar_constant({{kPi / 3, 0.5}, 0, 2}) == Approx(0.6584789484624083).epsilon(1e-14));
  CHECK(collar_constant({{kPi - 1e-9}, 1, 1}) < 1e-4);
  CHECK_THROWS_AS(collar_constant({{kPi}, 1, 1}), Error);
  CHECK_THROWS_AS(collar_constant({{4.0, 1.0}, 1, 2}), Error);
  CHECK_THROWS_AS(collar_constant({{0.0}, 1, 1}), Error);
}

TEST_CASE("decorations and reduced lengths") {
  const ConeSurface torus = load_corpus("torus_scalene.json");
  const auto same = reduced_lengths(torus, Decoration({0.0}));
  for (int e = 0; e < 3; ++e) CHECK(same[e] == torus.length(e));
  const auto loop = reduced_lengths(torus, Decoration({0.5 * torus.length(0)}));
  CHECK(loop[0] == 0.0);
  CHECK(loop[1] == Approx(torus.length(1) - torus.length(0)).epsilon(1e-14));

  const Decoration n = Decoration::normalized({1.0, 2.0, 5.0});
  CHECK(n.values()[0] + n.values()[1] + n.values()[2] == Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(Decoration::normalized({0.0, 0.0}), Error);
  CHECK_THROWS_AS(Decoration({-1.0}), Error);
  CHECK_THROWS_AS(reduced_lengths(torus, Decoration({0.1, 0.2})), Error);
  CHECK_THROWS_AS(n.check_bound(0.5), Error);
  n.check_bound(0.7);

  const ConeSurface sphere = load_corpus("sphere3.json");
  const Decoration standard = Decoration::standard(sphere.angle_data());
  CHECK(standard.values()[0] == Approx(collar_constant(sphere.angle_data())));
}

TEST_CASE("serialization round trip") {
  for (const auto& name : corpus_names()) {
    const ConeSurface s = load_corpus(name);
    const std::string text = serialize_surface(s);
    const ConeSurface back = ConeSurface::build(parse_surface(text));
    CHECK(serialize_surface(back) == text);
    CHECK(back.lengths() == s.lengths());
  }
}
