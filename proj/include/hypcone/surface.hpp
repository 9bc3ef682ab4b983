#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace hypcone {

// ------------------------------------------------------------- wire format

struct SideRecord {
  std::string edge;
  bool forward = true;  // "+" in the file, "-" for the reversed direction
};

struct SurfaceDescription {
  struct Edge {
    std::string id;
    double length = 0.0;
  };
  std::vector<Edge> edges;
  /// Counterclockwise boundary of each triangle.
  std::vector<std::array<SideRecord, 3>> triangles;
};

/// Parses the JSON surface format. Structural problems (missing keys,
/// wrong types, bad "dir") raise ParseError; topology and geometry are
/// checked later by ConeSurface::build.
SurfaceDescription parse_surface(std::string_view text);
SurfaceDescription load_surface_file(const std::string& path);

// ------------------------------------------------------------ combinatorics

/// Half-edge 3t + k is side k of triangle t; it runs from corner k to corner
/// k+1 and its tail corner is corner k.
using HalfEdge = int;

class Triangulation {
 public:
  /// Edge ids get coordinate indices in sorted order.
  static std::shared_ptr<const Triangulation> build(const SurfaceDescription& desc);

  int triangle_count() const { return static_cast<int>(sides_.size()); }
  int halfedge_count() const { return 3 * triangle_count(); }
  int edge_count() const { return static_cast<int>(edge_ids_.size()); }
  int vertex_count() const { return vertex_count_; }
  int genus() const { return genus_; }

  const std::vector<std::string>& edge_ids() const { return edge_ids_; }
  /// -1 if unknown.
  int edge_index(std::string_view id) const;
  const std::vector<std::array<SideRecord, 3>>& sides() const { return sides_; }

  static int triangle_of(HalfEdge he) { return he / 3; }
  static int slot_of(HalfEdge he) { return he % 3; }
  static HalfEdge next(HalfEdge he) { return 3 * (he / 3) + (he % 3 + 1) % 3; }
  static HalfEdge prev(HalfEdge he) { return 3 * (he / 3) + (he % 3 + 2) % 3; }

  int edge_of(HalfEdge he) const { return he_edge_[he]; }
  bool forward(HalfEdge he) const { return he_forward_[he]; }
  HalfEdge twin(HalfEdge he) const { return twin_[he]; }
  int tail(HalfEdge he) const { return tail_vertex_[he]; }
  int head(HalfEdge he) const { return tail_vertex_[next(he)]; }
  /// The "+" and "-" half-edges of an edge.
  std::array<HalfEdge, 2> halfedges(int edge) const { return edge_halfedges_[edge]; }
  /// Next outgoing half-edge counterclockwise around the tail vertex.
  HalfEdge next_ccw(HalfEdge he) const { return twin_[prev(he)]; }
  /// Outgoing half-edges of a vertex in counterclockwise order, starting at
  /// the lowest-numbered one.
  const std::vector<HalfEdge>& outgoing(int vertex) const { return outgoing_[vertex]; }

 private:
  std::vector<std::array<SideRecord, 3>> sides_;
  std::vector<std::string> edge_ids_;
  std::vector<int> he_edge_;
  std::vector<bool> he_forward_;
  std::vector<HalfEdge> twin_;
  std::vector<int> tail_vertex_;
  std::vector<std::array<HalfEdge, 2>> edge_halfedges_;
  std::vector<std::vector<HalfEdge>> outgoing_;
  int vertex_count_ = 0;
  int genus_ = 0;
};

// ----------------------------------------------------------------- geometry

/// Angle between sides a and b of a hyperbolic triangle, opposite c.
/// Throws TriangleInequality unless the strict inequalities hold.
double corner_angle(double a, double b, double c);

/// (d/da, d/db, d/dc) of corner_angle(a, b, c).
std::array<double, 3> corner_angle_gradient(double a, double b, double c);

struct VertexFan {
  int vertex = 0;
  /// Outgoing germs (half-edges) in counterclockwise order.
  std::vector<HalfEdge> germs;
  /// corner_angles[k] sits between germs[k] and germs[k+1] (cyclically).
  std::vector<double> corner_angles;
  /// Counterclockwise angle from germs[0] to germs[k].
  std::vector<double> cumulative;
  double total = 0.0;

  /// Angle swept rotating germs[i] clockwise onto germs[j]; 0 when i == j.
  double clockwise_angle(int i, int j) const;
};

struct AngleData {
  std::vector<double> theta;
  int genus = 0;
  int n = 0;
};

/// Strict hyperbolic surface with cone points, coordinates = edge lengths.
class ConeSurface {
 public:
  static ConeSurface build(const SurfaceDescription& desc);
  /// Same triangulation, new lengths (indexed like edge_ids()).
  ConeSurface with_lengths(std::vector<double> lengths) const;

  const Triangulation& topology() const { return *topology_; }
  std::shared_ptr<const Triangulation> topology_ptr() const { return topology_; }

  int genus() const { return topology_->genus(); }
  int vertex_count() const { return topology_->vertex_count(); }
  int edge_count() const { return topology_->edge_count(); }
  int triangle_count() const { return topology_->triangle_count(); }

  const std::vector<double>& lengths() const { return lengths_; }
  double length(int edge) const { return lengths_[edge]; }
  double halfedge_length(HalfEdge he) const { return lengths_[topology_->edge_of(he)]; }

  /// Angle at the tail corner of `he`, i.e. between he and prev(he).
  double corner(HalfEdge he) const { return corner_[he]; }
  const std::vector<VertexFan>& fans() const { return fans_; }
  AngleData angle_data() const;
  double cone_angle(int vertex) const { return fans_[vertex].total; }

  /// Sum over triangles of pi minus the angle sum.
  double area() const;

  SurfaceDescription describe() const;

 private:
  ConeSurface(std::shared_ptr<const Triangulation> topology, std::vector<double> lengths);

  std::shared_ptr<const Triangulation> topology_;
  std::vector<double> lengths_;
  std::vector<double> corner_;
  std::vector<VertexFan> fans_;
};

/// Canonical text form: edges sorted by id, triangles in stored order,
/// lengths with 17 significant digits.
std::string serialize_surface(const ConeSurface& surface);

AngleData cone_angles(const ConeSurface& surface);

struct StratumReport {
  double chi = 0.0;
  bool hyperbolic = false;
  bool flat = false;
  /// No angle within kWallTolerance of a positive multiple of 2pi.
  bool generic = false;
  /// All angles below pi.
  bool small = false;
};

inline constexpr double kWallTolerance = 1e-9;

/// chi = (2 - 2g - n) + sum theta_j / 2pi. Throws NotAdmissible if chi > 0.
StratumReport classify_angles(const AngleData& angles);
/// Distance from theta to the nearest positive multiple of 2pi.
double wall_distance(double theta);

std::vector<VertexFan> vertex_fans(const ConeSurface& surface);

/// cosh^{-1}(1/sin(theta_max/2))/2; needs all angles in (0, pi).
double collar_constant(const AngleData& angles);

class Decoration {
 public:
  /// Nonnegative and finite; the zero decoration is allowed.
  explicit Decoration(std::vector<double> eps);
  /// Rescaled so that the entries sum to 1.
  static Decoration normalized(std::vector<double> eps);
  /// Standard decoration: every ball has radius collar_constant(angles).
  static Decoration standard(const AngleData& angles);

  const std::vector<double>& values() const { return eps_; }
  std::size_t size() const { return eps_.size(); }
  /// Throws OutOfRange unless every entry is below bound.
  void check_bound(double bound) const;

 private:
  std::vector<double> eps_;
};

/// a_i - (eps_b + eps_c) per edge, indexed like edge_ids(); not clamped.
std::vector<double> reduced_lengths(const ConeSurface& surface, const Decoration& eps);

}  // namespace hypcone
