#pragma once

#include <array>
#include <string>
#include <vector>

#include "hypcone/sl2.hpp"
#include "hypcone/surface.hpp"

namespace hypcone {

/// Corner chain around a vertex and the holonomy it produces.
struct VertexLoop {
  int vertex = 0;
  /// Germ the loop starts from; the fixed point of the holonomy is the
  /// developed tail of this germ in its own triangle.
  HalfEdge base = 0;
  /// Half-edges crossed, in order.
  std::vector<HalfEdge> chain;
  Sl2Matrix holonomy;
};

/// Developed image of a cone surface in the upper half-plane.
///
/// Each triangle t has a frame F_t in PSL2(R) taking its standard placement
/// (corner 0 at i, side 0 up the imaginary axis, corner 2 to the left) to
/// its developed position. Crossing half-edge he into the twin's triangle
/// multiplies the frame on the right by transition(he).
class HolonomyAtlas {
 public:
  const ConeSurface& surface() const { return surface_; }
  int base_triangle() const { return base_triangle_; }

  const Sl2Matrix& frame(int triangle) const { return frames_[triangle]; }
  const std::array<HyperbolicPoint, 3>& positions(int triangle) const { return positions_[triangle]; }
  const Sl2Matrix& transition(HalfEdge he) const { return transitions_[he]; }
  /// True when he is a spanning-tree edge of the dual graph (either direction).
  bool in_tree(HalfEdge he) const { return tree_[he]; }
  const std::vector<VertexLoop>& loops() const { return loops_; }

  /// Corner-chain holonomy of the loop around the tail of `base`, expressed
  /// in the developed coordinates of the triangle containing `base`.
  VertexLoop loop_at(HalfEdge base) const;

  /// Returns a copy with every developed object moved by g.
  HolonomyAtlas conjugated(const Sl2Matrix& g) const;

 private:
  friend HolonomyAtlas develop(const ConeSurface& surface, int base_triangle);
  explicit HolonomyAtlas(ConeSurface surface) : surface_(std::move(surface)) {}

  ConeSurface surface_;
  int base_triangle_ = 0;
  std::vector<Sl2Matrix> frames_;
  std::vector<std::array<HyperbolicPoint, 3>> positions_;
  std::vector<Sl2Matrix> transitions_;
  std::vector<bool> tree_;
  std::vector<VertexLoop> loops_;
};

/// Standard placement of a triangle's corners.
std::array<HyperbolicPoint, 3> standard_placement(const ConeSurface& surface, int triangle);

/// Frame change across half-edge he (from its triangle to the twin's).
Sl2Matrix glue_transition(const ConeSurface& surface, HalfEdge he);

/// Breadth-first development over the dual graph starting at base_triangle.
HolonomyAtlas develop(const ConeSurface& surface, int base_triangle = 0);

/// Holonomy of the loop around `vertex`; throws WallAngle when the cone
/// angle sits on 2pi N.
Sl2Matrix vertex_holonomy(const HolonomyAtlas& atlas, int vertex);

/// Distance between the fixed points of the two vertex holonomies at the
/// ends of `edge`, both based in the triangle holding the edge's "+" side.
double alength_from_fixed_points(const HolonomyAtlas& atlas, int edge);

/// One row per triangle (developed corners) and one per vertex (holonomy
/// entries, class, parameter); 17 significant digits.
std::string dump_atlas(const HolonomyAtlas& atlas);

}  // namespace hypcone
