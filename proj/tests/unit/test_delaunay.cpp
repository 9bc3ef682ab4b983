#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "hypcone/delaunay.hpp"
#include "hypcone/error.hpp"
#include "hypcone/poisson.hpp"

using namespace hypcone;
using doctest::Approx;

namespace {

std::vector<double> sorted_angles(const ConeSurface& s) {
  std::vector<double> theta = cone_angles(s).theta;
  std::sort(theta.begin(), theta.end());
  return theta;
}

/// Triangles as (edge, direction) cycles up to rotation; the direction of
/// `loose` is ignored.
std::vector<std::array<std::pair<int, bool>, 3>> combinatorics(const ConeSurface& s, int loose) {
  std::vector<std::array<std::pair<int, bool>, 3>> out;
  const Triangulation& topo = s.topology();
  for (int t = 0; t < s.triangle_count(); ++t) {
    std::array<std::pair<int, bool>, 3> best;
    for (int r = 0; r < 3; ++r) {
      std::array<std::pair<int, bool>, 3> cycle;
      for (int k = 0; k < 3; ++k) {
        const HalfEdge he = 3 * t + (r + k) % 3;
        cycle[k] = {topo.edge_of(he), topo.edge_of(he) == loose || topo.forward(he)};
      }
      if (r == 0 || cycle < best) best = cycle;
    }
    out.push_back(best);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ConeSurface kite_sphere() {
  const ConeSurface s = load_corpus("sphere3.json");
  return s.with_lengths({1.0, 1.0, 1.9});
}

}  // namespace

TEST_CASE("edge invariant") {
  const ConeSurface torus = load_corpus("torus_equilateral.json");
  const double corner = torus.corner(0);
  for (int e = 0; e < 3; ++e) CHECK(edge_invariant(torus, e) == Approx(std::numbers::pi - 2 * corner).epsilon(1e-14));
  const ConeSurface long_edge = load_corpus("torus_long_edge.json");
  CHECK(edge_invariant(long_edge, long_edge.topology().edge_index("c")) < 0.0);
}

TEST_CASE("Delaunay input needs no flips") {
  for (const auto& name : corpus_names()) {
    const ConeSurface s = load_corpus(name);
    const auto psi = edge_invariants(s);
    if (*std::min_element(psi.begin(), psi.end()) < -kDelaunayTolerance) continue;
    const DelaunayResult r = make_delaunay(s);
    CHECK(r.moves.empty());
    CHECK(r.surface.lengths() == s.lengths());
  }
}

TEST_CASE("long edge torus") {
  const ConeSurface s = load_corpus("torus_long_edge.json");
  const DelaunayResult r = make_delaunay(s);
  REQUIRE(r.moves.size() == 1);
  CHECK(r.moves[0].edge == "c");
  CHECK(r.moves[0].pre_length == 1.9);
  CHECK(r.moves[0].pre_psi < 0.0);
  CHECK(r.moves[0].post_length == Approx(flipped_length(s, 2)).epsilon(1e-15));
  for (double psi : edge_invariants(r.surface)) CHECK(psi >= -kDelaunayTolerance);
  const auto before = sorted_angles(s), after = sorted_angles(r.surface);
  CHECK(std::abs(before[0] - after[0]) < 1e-9);
  CHECK(std::abs(s.area() - r.surface.area()) < 1e-9);
  const std::string log = format_move_log(r.moves);
  CHECK(log.rfind("c 1.8999999999999999 ", 0) == 0);
}

TEST_CASE("flip twice restores the surface") {
  for (const char* name : {"torus_scalene.json", "tetrahedron.json", "torus2.json", "torus_long_edge.json"}) {
    const ConeSurface s = load_corpus(name);
    for (int e = 0; e < s.edge_count(); ++e) {
      ConeSurface once = s;
      try {
        once = flip(s, e);
      } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::UnflippableConfiguration);
        continue;
      }
      const ConeSurface twice = flip(once, e);
      for (int k = 0; k < s.edge_count(); ++k) CHECK(std::abs(twice.length(k) - s.length(k)) < 1e-11);
      CHECK(combinatorics(twice, e) == combinatorics(s, e));
      const auto a = sorted_angles(s), b = sorted_angles(once);
      for (std::size_t v = 0; v < a.size(); ++v) CHECK(std::abs(a[v] - b[v]) < 1e-9);
      CHECK(std::abs(s.area() - once.area()) < 1e-9);
    }
  }
}

TEST_CASE("unflippable configurations") {
  const ConeSurface kite = kite_sphere();
  for (int e : {0, 1}) {
    try {
      flipped_length(kite, e);
      FAIL("expected UnflippableConfiguration");
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::UnflippableConfiguration);
    }
  }
  CHECK_NOTHROW(flipped_length(kite, 2));

  const ConeSurface folded = ConeSurface::build(parse_surface(
      R"({"edges": [{"id": "a", "length": 1}, {"id": "b", "length": 1.2}, {"id": "c", "length": 1}],
          "triangles": [
            {"sides": [{"edge": "a", "dir": "+"}, {"edge": "a", "dir": "-"}, {"edge": "b", "dir": "+"}]},
            {"sides": [{"edge": "b", "dir": "-"}, {"edge": "c", "dir": "+"}, {"edge": "c", "dir": "-"}]}]})"));
  CHECK_THROWS_AS(flip(folded, 0), Error);
  CHECK_THROWS_AS(flip(folded, 2), Error);
  CHECK_NOTHROW(flip(folded, 1));
}

TEST_CASE("flip coordinate change carries the bracket") {
  const ConeSurface s = load_corpus("torus_long_edge.json");
  const int e = s.topology().edge_index("c");
  const int n = s.edge_count();
  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(n, n);
  const double h = 1e-6;
  for (int k = 0; k < n; ++k) {
    std::vector<double> up = s.lengths(), down = s.lengths();
    up[k] += h;
    down[k] -= h;
    j(e, k) = (flipped_length(s.with_lengths(up), e) - flipped_length(s.with_lengths(down), e)) / (2 * h);
  }
  const Eigen::MatrixXd pre = eta_matrix(s).entries;
  const Eigen::MatrixXd post = eta_matrix(flip(s, e)).entries;
  CHECK((j * pre * j.transpose() - post).cwiseAbs().maxCoeff() < 1e-4 * std::max(1.0, post.cwiseAbs().maxCoeff()));
}

TEST_CASE("random lengths reach a Delaunay triangulation") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> scale(0.6, 1.6);
  const ConeSurface base = load_corpus("torus2.json");
  int done = 0;
  while (done < 20) {
    std::vector<double> lengths = base.lengths();
    for (double& a : lengths) a *= scale(rng);
    ConeSurface s = base;
    try {
      s = base.with_lengths(lengths);
    } catch (const Error&) {
      continue;
    }
    const DelaunayResult r = make_delaunay(s);
    for (double psi : edge_invariants(r.surface)) CHECK(psi >= -kDelaunayTolerance);
    const auto a = sorted_angles(s), b = sorted_angles(r.surface);
    for (std::size_t v = 0; v < a.size(); ++v) CHECK(std::abs(a[v] - b[v]) < 1e-9);
    CHECK(std::abs(s.area() - r.surface.area()) < 1e-9);
    ++done;
  }
}

TEST_CASE("flip budget") {
  const ConeSurface s = load_corpus("torus_long_edge.json");
  try {
    make_delaunay(s, kDelaunayTolerance, 0);
    FAIL("expected NonTermination");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NonTermination);
  }
}
