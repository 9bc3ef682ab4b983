#include "hypcone/delaunay.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "hypcone/error.hpp"
#include "hypcone/holonomy.hpp"

namespace hypcone {

namespace {

struct Quad {
  HalfEdge plus;
  HalfEdge minus;
  int t_plus;
  int t_minus;
};

Quad quad_around(const ConeSurface& surface, int edge) {
  const auto [plus, minus] = surface.topology().halfedges(edge);
  const Quad q{plus, minus, Triangulation::triangle_of(plus), Triangulation::triangle_of(minus)};
  if (q.t_plus == q.t_minus) {
    throw Error(ErrorKind::UnflippableConfiguration,
                "edge '" + surface.topology().edge_ids()[edge] + "' borders triangle " +
                    std::to_string(q.t_plus) + " on both sides");
  }
  return q;
}

}  // namespace

double edge_invariant(const ConeSurface& surface, int edge) {
  const auto [plus, minus] = surface.topology().halfedges(edge);
  return std::numbers::pi - surface.corner(Triangulation::prev(plus)) -
         surface.corner(Triangulation::prev(minus));
}

std::vector<double> edge_invariants(const ConeSurface& surface) {
  std::vector<double> psi(surface.edge_count());
  for (int e = 0; e < surface.edge_count(); ++e) psi[e] = edge_invariant(surface, e);
  return psi;
}

double flipped_length(const ConeSurface& surface, int edge) {
  const Quad q = quad_around(surface, edge);
  // Corners at the two ends of the edge, summed over both triangles.
  const double at_tail = surface.corner(q.plus) + surface.corner(Triangulation::next(q.minus));
  const double at_head = surface.corner(Triangulation::next(q.plus)) + surface.corner(q.minus);
  if (!(at_tail < std::numbers::pi && at_head < std::numbers::pi)) {
    throw Error(ErrorKind::UnflippableConfiguration,
                "quadrilateral around '" + surface.topology().edge_ids()[edge] + "' is not convex");
  }
  const auto mine = standard_placement(surface, q.t_plus);
  const auto theirs = standard_placement(surface, q.t_minus);
  const HyperbolicPoint apex = mine[Triangulation::slot_of(Triangulation::prev(q.plus))];
  const HyperbolicPoint other = glue_transition(surface, q.plus)
                                    .apply(theirs[Triangulation::slot_of(Triangulation::prev(q.minus))]);
  return hyp_distance(apex, other);
}

ConeSurface flip(const ConeSurface& surface, int edge) {
  const Quad q = quad_around(surface, edge);
  const double new_length = flipped_length(surface, edge);

  SurfaceDescription desc = surface.describe();
  const auto& sides = desc.triangles;
  const std::string& id = surface.topology().edge_ids()[edge];
  // Quad corners: u = tail of the "+" side, v = its head, p and q opposite
  // in the "+" and "-" triangles. New diagonal runs q -> p.
  const SideRecord v_to_p = sides[q.t_plus][Triangulation::slot_of(Triangulation::next(q.plus))];
  const SideRecord p_to_u = sides[q.t_plus][Triangulation::slot_of(Triangulation::prev(q.plus))];
  const SideRecord u_to_q = sides[q.t_minus][Triangulation::slot_of(Triangulation::next(q.minus))];
  const SideRecord q_to_v = sides[q.t_minus][Triangulation::slot_of(Triangulation::prev(q.minus))];
  desc.triangles[q.t_plus] = {SideRecord{id, true}, p_to_u, u_to_q};
  desc.triangles[q.t_minus] = {SideRecord{id, false}, q_to_v, v_to_p};
  for (auto& e : desc.edges) {
    if (e.id == id) e.length = new_length;
  }
  return ConeSurface::build(desc);
}

DelaunayResult make_delaunay(const ConeSurface& surface, double tolerance, std::size_t max_flips) {
  DelaunayResult result{surface, {}};
  while (true) {
    const ConeSurface& current = result.surface;
    const std::vector<double> psi = edge_invariants(current);
    std::vector<int> candidates;
    for (int e = 0; e < current.edge_count(); ++e) {
      if (psi[e] < -tolerance) candidates.push_back(e);
    }
    if (candidates.empty()) return result;
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](int a, int b) { return psi[a] < psi[b]; });
    if (result.moves.size() >= max_flips) {
      std::ostringstream os;
      os << "gave up after " << max_flips << " flips; most negative psi " << psi[candidates.front()];
      throw Error(ErrorKind::NonTermination, os.str());
    }
    bool flipped = false;
    for (int e : candidates) {
      try {
        const auto [plus, minus] = current.topology().halfedges(e);
        FlipMove move{current.topology().edge_ids()[e], Triangulation::triangle_of(plus),
                      Triangulation::triangle_of(minus), current.length(e), 0.0, psi[e]};
        ConeSurface next = flip(current, e);
        move.post_length = next.length(e);
        result.moves.push_back(move);
        result.surface = std::move(next);
        flipped = true;
        break;
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::UnflippableConfiguration) throw;
      }
    }
    if (!flipped) {
      throw Error(ErrorKind::UnflippableConfiguration,
                  "every non-Delaunay edge is unflippable; first is '" +
                      current.topology().edge_ids()[candidates.front()] + "'");
    }
  }
}

std::string format_move_log(const std::vector<FlipMove>& moves) {
  std::ostringstream os;
  char buf[128];
  for (const auto& m : moves) {
    std::snprintf(buf, sizeof buf, " %.17g %.17g %.17g", m.pre_length, m.post_length, m.pre_psi);
    os << m.edge << buf << '\n';
  }
  return os.str();
}

}  // namespace hypcone
