#include "hypcone/holonomy.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <queue>
#include <sstream>

#include "hypcone/error.hpp"

namespace hypcone {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCollapse = 1e-12;

// Moves i to i e^{len} along the imaginary axis.
Sl2Matrix push(double len) { return {std::exp(0.5 * len), 0.0, 0.0, std::exp(-0.5 * len)}; }

// Counterclockwise rotation about i.
Sl2Matrix turn(double angle) {
  const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
  return {c, s, -s, c};
}

// Side frames of the standard placement: A[k](i) = corner k and A[k] maps the
// upward direction at i onto the direction of side k.
std::array<Sl2Matrix, 3> side_frames(const ConeSurface& surface, int t) {
  std::array<Sl2Matrix, 3> frames;
  frames[0] = Sl2Matrix::identity();
  for (int k = 1; k < 3; ++k) {
    const HalfEdge he = 3 * t + k;
    frames[k] = frames[k - 1] * push(surface.halfedge_length(he - 1)) * turn(kPi - surface.corner(he));
  }
  return frames;
}

const char* kind_name(IsometryKind kind) {
  switch (kind) {
    case IsometryKind::Identity: return "identity";
    case IsometryKind::Elliptic: return "elliptic";
    case IsometryKind::Parabolic: return "parabolic";
    case IsometryKind::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::array<HyperbolicPoint, 3> standard_placement(const ConeSurface& surface, int triangle) {
  const auto frames = side_frames(surface, triangle);
  return {frames[0].apply(HyperbolicPoint::i()), frames[1].apply(HyperbolicPoint::i()),
          frames[2].apply(HyperbolicPoint::i())};
}

Sl2Matrix glue_transition(const ConeSurface& surface, HalfEdge he) {
  const Triangulation& topo = surface.topology();
  const HalfEdge tw = topo.twin(he);
  const auto mine = side_frames(surface, Triangulation::triangle_of(he));
  const auto theirs = side_frames(surface, Triangulation::triangle_of(tw));
  // Half-turn about the midpoint of the side swaps its endpoints.
  const Sl2Matrix swap = push(surface.halfedge_length(he)) * turn(kPi);
  return mine[Triangulation::slot_of(he)] * swap * theirs[Triangulation::slot_of(tw)].inverse();
}

HolonomyAtlas develop(const ConeSurface& surface, int base_triangle) {
  const Triangulation& topo = surface.topology();
  if (base_triangle < 0 || base_triangle >= topo.triangle_count()) {
    throw Error(ErrorKind::OutOfRange, "base triangle index");
  }
  HolonomyAtlas atlas(surface);
  atlas.base_triangle_ = base_triangle;

  atlas.transitions_.reserve(topo.halfedge_count());
  for (HalfEdge he = 0; he < topo.halfedge_count(); ++he) {
    atlas.transitions_.push_back(glue_transition(surface, he));
  }

  std::vector<bool> placed(topo.triangle_count(), false);
  atlas.frames_.assign(topo.triangle_count(), Sl2Matrix::identity());
  atlas.tree_.assign(topo.halfedge_count(), false);
  std::queue<int> queue;
  placed[base_triangle] = true;
  queue.push(base_triangle);
  while (!queue.empty()) {
    const int t = queue.front();
    queue.pop();
    for (int k = 0; k < 3; ++k) {
      const HalfEdge he = 3 * t + k;
      const int u = Triangulation::triangle_of(topo.twin(he));
      if (placed[u]) continue;
      placed[u] = true;
      atlas.tree_[he] = atlas.tree_[topo.twin(he)] = true;
      atlas.frames_[u] = atlas.frames_[t] * atlas.transitions_[he];
      queue.push(u);
    }
  }

  atlas.positions_.reserve(topo.triangle_count());
  for (int t = 0; t < topo.triangle_count(); ++t) {
    const auto standard = standard_placement(surface, t);
    std::array<HyperbolicPoint, 3> developed{atlas.frames_[t].apply(standard[0]),
                                             atlas.frames_[t].apply(standard[1]),
                                             atlas.frames_[t].apply(standard[2])};
    for (int k = 0; k < 3; ++k) {
      if (hyp_distance(developed[k], developed[(k + 1) % 3]) < kCollapse) {
        throw Error(ErrorKind::NumericalCollapse,
                    "developed triangle " + std::to_string(t) + " degenerates");
      }
    }
    atlas.positions_.push_back(developed);
  }

  for (int v = 0; v < topo.vertex_count(); ++v) {
    atlas.loops_.push_back(atlas.loop_at(topo.outgoing(v).front()));
  }
  return atlas;
}

VertexLoop HolonomyAtlas::loop_at(HalfEdge base) const {
  const Triangulation& topo = surface_.topology();
  VertexLoop loop;
  loop.vertex = topo.tail(base);
  loop.base = base;
  Sl2Matrix product;
  HalfEdge germ = base;
  do {
    const HalfEdge crossing = Triangulation::prev(germ);
    loop.chain.push_back(crossing);
    product = product * transitions_[crossing];
    germ = topo.next_ccw(germ);
  } while (germ != base);
  loop.holonomy = product.conjugate_by(frames_[Triangulation::triangle_of(base)]);
  return loop;
}

HolonomyAtlas HolonomyAtlas::conjugated(const Sl2Matrix& g) const {
  HolonomyAtlas out = *this;
  for (auto& f : out.frames_) f = g * f;
  for (auto& tri : out.positions_) {
    for (auto& p : tri) p = g.apply(p);
  }
  for (auto& loop : out.loops_) loop.holonomy = loop.holonomy.conjugate_by(g);
  return out;
}

Sl2Matrix vertex_holonomy(const HolonomyAtlas& atlas, int vertex) {
  if (vertex < 0 || vertex >= atlas.surface().vertex_count()) {
    throw Error(ErrorKind::OutOfRange, "vertex index");
  }
  const double theta = atlas.surface().cone_angle(vertex);
  if (wall_distance(theta) <= kWallTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "vertex " << vertex << " has cone angle " << theta << " on 2pi N";
    throw Error(ErrorKind::WallAngle, os.str());
  }
  return atlas.loops()[vertex].holonomy;
}

double alength_from_fixed_points(const HolonomyAtlas& atlas, int edge) {
  const ConeSurface& surface = atlas.surface();
  if (edge < 0 || edge >= surface.edge_count()) throw Error(ErrorKind::OutOfRange, "edge index");
  const HalfEdge he = surface.topology().halfedges(edge)[0];
  for (HalfEdge end : {he, Triangulation::next(he)}) {
    const int v = surface.topology().tail(end);
    if (wall_distance(surface.cone_angle(v)) <= kWallTolerance) {
      throw Error(ErrorKind::WallAngle, "edge '" + surface.topology().edge_ids()[edge] +
                                            "' ends at wall vertex " + std::to_string(v));
    }
  }
  const HyperbolicPoint from = fixed_point(atlas.loop_at(he).holonomy);
  const HyperbolicPoint to = fixed_point(atlas.loop_at(Triangulation::next(he)).holonomy);
  return hyp_distance(from, to);
}

std::string dump_atlas(const HolonomyAtlas& atlas) {
  std::ostringstream os;
  for (int t = 0; t < atlas.surface().triangle_count(); ++t) {
    os << "triangle " << t;
    for (const auto& p : atlas.positions(t)) os << ' ' << fmt17(p.x()) << ' ' << fmt17(p.y());
    os << '\n';
  }
  for (const auto& loop : atlas.loops()) {
    const Sl2Matrix m = loop.holonomy.normalized();
    const IsometryClass cls = classify(m);
    os << "vertex " << loop.vertex << ' ' << fmt17(m.a()) << ' ' << fmt17(m.b()) << ' '
       << fmt17(m.c()) << ' ' << fmt17(m.d()) << ' ' << kind_name(cls.kind) << ' '
       << fmt17(cls.parameter) << '\n';
  }
  return os.str();
}

}  // namespace hypcone
