#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hypcone/surface.hpp"

namespace hypcone {

struct FlipMove {
  std::string edge;
  /// Triangles incident to the edge before the flip (the "+" side first).
  int triangle_plus = 0;
  int triangle_minus = 0;
  double pre_length = 0.0;
  double post_length = 0.0;
  double pre_psi = 0.0;
};

/// psi_0(e) = pi minus the two corner angles opposite e. Nonnegative means
/// locally Delaunay.
double edge_invariant(const ConeSurface& surface, int edge);
std::vector<double> edge_invariants(const ConeSurface& surface);

/// Length of the other diagonal of the quadrilateral around `edge`, measured
/// by developing both triangles into the upper half-plane. Throws
/// UnflippableConfiguration when the edge borders one triangle twice or the
/// quadrilateral is not strictly convex at the edge's endpoints.
double flipped_length(const ConeSurface& surface, int edge);

/// Replaces `edge` by the other diagonal; the new diagonal keeps the edge
/// id, so coordinates stay aligned. The triangle holding the new "+" side
/// keeps index of the old "+" triangle.
ConeSurface flip(const ConeSurface& surface, int edge);

inline constexpr double kDelaunayTolerance = 1e-10;
inline constexpr std::size_t kMaxFlips = 1'000'000;

struct DelaunayResult {
  ConeSurface surface;
  std::vector<FlipMove> moves;
};

/// Flips the most negative psi_0 edge (ties by edge id) until every
/// psi_0 >= -tolerance.
DelaunayResult make_delaunay(const ConeSurface& surface, double tolerance = kDelaunayTolerance,
                             std::size_t max_flips = kMaxFlips);

/// One line per flip: edge id, pre-length, post-length, pre-psi.
std::string format_move_log(const std::vector<FlipMove>& moves);

}  // namespace hypcone
