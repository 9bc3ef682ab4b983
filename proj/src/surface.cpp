#include "hypcone/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <queue>
#include <sstream>

#include "hypcone/error.hpp"

namespace hypcone {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

std::string triangle_label(const Triangulation& topo, int t) {
  std::ostringstream os;
  os << "triangle " << t << " (";
  for (int k = 0; k < 3; ++k) {
    const SideRecord& side = topo.sides()[t][k];
    os << (k ? ", " : "") << side.edge << (side.forward ? "+" : "-");
  }
  os << ")";
  return os.str();
}

}  // namespace

// -------------------------------------------------------------- Triangulation

std::shared_ptr<const Triangulation> Triangulation::build(const SurfaceDescription& desc) {
  auto topo = std::make_shared<Triangulation>();
  topo->sides_ = desc.triangles;
  if (desc.triangles.empty()) throw Error(ErrorKind::NonManifold, "no triangles");

  for (const auto& e : desc.edges) topo->edge_ids_.push_back(e.id);
  std::sort(topo->edge_ids_.begin(), topo->edge_ids_.end());
  if (std::adjacent_find(topo->edge_ids_.begin(), topo->edge_ids_.end()) != topo->edge_ids_.end()) {
    throw Error(ErrorKind::ParseError, "duplicate edge id");
  }

  const int nh = 3 * static_cast<int>(desc.triangles.size());
  const int ne = topo->edge_count();
  topo->he_edge_.assign(nh, -1);
  topo->he_forward_.assign(nh, true);
  topo->twin_.assign(nh, -1);
  topo->edge_halfedges_.assign(ne, {-1, -1});

  for (int he = 0; he < nh; ++he) {
    const SideRecord& side = desc.triangles[he / 3][he % 3];
    const int e = topo->edge_index(side.edge);
    if (e < 0) {
      throw Error(ErrorKind::NonManifold, "triangle " + std::to_string(he / 3) +
                                              " uses undeclared edge '" + side.edge + "'");
    }
    HalfEdge& slot = topo->edge_halfedges_[e][side.forward ? 0 : 1];
    if (slot >= 0) {
      throw Error(ErrorKind::NonManifold, "edge '" + side.edge + "' appears twice with dir " +
                                              (side.forward ? "+" : "-"));
    }
    slot = he;
    topo->he_edge_[he] = e;
    topo->he_forward_[he] = side.forward;
  }
  for (int e = 0; e < ne; ++e) {
    const auto [plus, minus] = topo->edge_halfedges_[e];
    if (plus < 0 || minus < 0) {
      throw Error(ErrorKind::NonManifold,
                  "edge '" + topo->edge_ids_[e] + "' is not used once in each direction");
    }
    topo->twin_[plus] = minus;
    topo->twin_[minus] = plus;
  }

  // Connectivity over the dual graph.
  std::vector<bool> seen(desc.triangles.size(), false);
  std::queue<int> queue;
  queue.push(0);
  seen[0] = true;
  int reached = 1;
  while (!queue.empty()) {
    const int t = queue.front();
    queue.pop();
    for (int k = 0; k < 3; ++k) {
      const int u = topo->twin_[3 * t + k] / 3;
      if (!seen[u]) {
        seen[u] = true;
        ++reached;
        queue.push(u);
      }
    }
  }
  if (reached != topo->triangle_count()) {
    throw Error(ErrorKind::Disconnected, std::to_string(topo->triangle_count() - reached) +
                                             " triangles unreachable from triangle 0");
  }

  // Tail corners of twins are identified crosswise.
  UnionFind corners(nh);
  for (int he = 0; he < nh; ++he) {
    const HalfEdge tw = topo->twin_[he];
    corners.unite(he, next(tw));
    corners.unite(next(he), tw);
  }
  std::map<int, int> root_to_vertex;
  topo->tail_vertex_.assign(nh, -1);
  for (int he = 0; he < nh; ++he) {
    const int root = corners.find(he);
    auto [it, inserted] = root_to_vertex.emplace(root, static_cast<int>(root_to_vertex.size()));
    topo->tail_vertex_[he] = it->second;
  }
  topo->vertex_count_ = static_cast<int>(root_to_vertex.size());

  topo->outgoing_.assign(topo->vertex_count_, {});
  for (int he = 0; he < nh; ++he) {
    auto& fan = topo->outgoing_[topo->tail_vertex_[he]];
    if (!fan.empty()) continue;
    HalfEdge g = he;
    do {
      fan.push_back(g);
      g = topo->next_ccw(g);
    } while (g != he);
  }
  int germs = 0;
  for (const auto& fan : topo->outgoing_) germs += static_cast<int>(fan.size());
  if (germs != nh) throw Error(ErrorKind::NonManifold, "vertex links are not single cycles");

  const int chi = topo->vertex_count_ - ne + topo->triangle_count();
  if (chi > 2 || chi % 2 != 0) {
    throw Error(ErrorKind::NonManifold, "Euler characteristic " + std::to_string(chi));
  }
  topo->genus_ = (2 - chi) / 2;
  if (ne != 6 * topo->genus_ - 6 + 3 * topo->vertex_count_) {
    throw Error(ErrorKind::NonManifold, "edge count is not 6g - 6 + 3n");
  }
  return topo;
}

int Triangulation::edge_index(std::string_view id) const {
  const auto it = std::lower_bound(edge_ids_.begin(), edge_ids_.end(), id);
  if (it == edge_ids_.end() || *it != id) return -1;
  return static_cast<int>(it - edge_ids_.begin());
}

// ------------------------------------------------------------------ geometry

double corner_angle(double a, double b, double c) {
  const double s = 0.5 * (a + b + c);
  if (!(a > 0.0 && b > 0.0 && c > 0.0) || !(s - a > 0.0 && s - b > 0.0 && s - c > 0.0) ||
      !std::isfinite(s)) {
    std::ostringstream os;
    os << "lengths (" << a << ", " << b << ", " << c << ")";
    throw Error(ErrorKind::TriangleInequality, os.str());
  }
  // Half-angle form of arccos[(cosh a cosh b - cosh c)/(sinh a sinh b)].
  const double sin_half = std::sqrt(std::sinh(s - a) * std::sinh(s - b));
  const double cos_half = std::sqrt(std::sinh(s) * std::sinh(s - c));
  return 2.0 * std::atan2(sin_half, cos_half);
}

std::array<double, 3> corner_angle_gradient(double a, double b, double c) {
  const double gamma = corner_angle(a, b, c);
  const double sg = std::sin(gamma);
  const double sa = std::sinh(a), sb = std::sinh(b), sc = std::sinh(c);
  const double ca = std::cosh(a), cb = std::cosh(b), cc = std::cosh(c);
  return {-(ca * cc - cb) / (sa * sa * sb * sg), -(cb * cc - ca) / (sb * sb * sa * sg),
          sc / (sa * sb * sg)};
}

double VertexFan::clockwise_angle(int i, int j) const {
  if (i == j) return 0.0;
  const double d = cumulative[i] - cumulative[j];
  return d > 0.0 ? d : d + total;
}

// --------------------------------------------------------------- ConeSurface

ConeSurface ConeSurface::build(const SurfaceDescription& desc) {
  auto topo = Triangulation::build(desc);
  std::vector<double> lengths(topo->edge_count(), 0.0);
  for (const auto& e : desc.edges) lengths[topo->edge_index(e.id)] = e.length;
  return ConeSurface(std::move(topo), std::move(lengths));
}

ConeSurface ConeSurface::with_lengths(std::vector<double> lengths) const {
  if (lengths.size() != lengths_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "length vector size");
  }
  return ConeSurface(topology_, std::move(lengths));
}

ConeSurface::ConeSurface(std::shared_ptr<const Triangulation> topology, std::vector<double> lengths)
    : topology_(std::move(topology)), lengths_(std::move(lengths)) {
  const Triangulation& topo = *topology_;
  for (int e = 0; e < topo.edge_count(); ++e) {
    if (!(lengths_[e] > 0.0) || !std::isfinite(lengths_[e])) {
      std::ostringstream os;
      os << "edge '" << topo.edge_ids()[e] << "' has length " << lengths_[e];
      throw Error(ErrorKind::NonPositiveLength, os.str());
    }
  }
  corner_.assign(topo.halfedge_count(), 0.0);
  for (int t = 0; t < topo.triangle_count(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const HalfEdge he = 3 * t + k;
      try {
        corner_[he] = corner_angle(halfedge_length(he), halfedge_length(Triangulation::prev(he)),
                                   halfedge_length(Triangulation::next(he)));
      } catch (const Error&) {
        std::ostringstream os;
        os << triangle_label(topo, t) << " with lengths (" << halfedge_length(3 * t) << ", "
           << halfedge_length(3 * t + 1) << ", " << halfedge_length(3 * t + 2) << ")";
        throw Error(ErrorKind::TriangleInequality, os.str());
      }
    }
  }
  fans_.resize(topo.vertex_count());
  for (int v = 0; v < topo.vertex_count(); ++v) {
    VertexFan& fan = fans_[v];
    fan.vertex = v;
    fan.germs = topo.outgoing(v);
    double acc = 0.0;
    for (HalfEdge g : fan.germs) {
      fan.cumulative.push_back(acc);
      fan.corner_angles.push_back(corner_[g]);
      acc += corner_[g];
    }
    fan.total = acc;
  }
}

AngleData ConeSurface::angle_data() const {
  AngleData data;
  data.genus = genus();
  data.n = vertex_count();
  for (const auto& fan : fans_) data.theta.push_back(fan.total);
  return data;
}

double ConeSurface::area() const {
  double area = 0.0;
  for (int t = 0; t < triangle_count(); ++t) {
    area += std::numbers::pi - corner_[3 * t] - corner_[3 * t + 1] - corner_[3 * t + 2];
  }
  return area;
}

SurfaceDescription ConeSurface::describe() const {
  SurfaceDescription desc;
  for (int e = 0; e < edge_count(); ++e) desc.edges.push_back({topology_->edge_ids()[e], lengths_[e]});
  desc.triangles = topology_->sides();
  return desc;
}

AngleData cone_angles(const ConeSurface& surface) { return surface.angle_data(); }

std::vector<VertexFan> vertex_fans(const ConeSurface& surface) { return surface.fans(); }

double wall_distance(double theta) {
  const double k = std::max(1.0, std::round(theta / kTwoPi));
  return std::abs(theta - k * kTwoPi);
}

StratumReport classify_angles(const AngleData& angles) {
  if (static_cast<int>(angles.theta.size()) != angles.n) {
    throw Error(ErrorKind::DimensionMismatch, "angle vector size differs from n");
  }
  StratumReport report;
  double sum = 0.0;
  bool generic = true;
  bool small = true;
  for (double theta : angles.theta) {
    if (!std::isfinite(theta) || theta < 0.0) {
      throw Error(ErrorKind::OutOfRange, "cone angles must be finite and nonnegative");
    }
    sum += theta;
    if (wall_distance(theta) <= kWallTolerance) generic = false;
    if (!(theta < std::numbers::pi)) small = false;
  }
  report.chi = (2.0 - 2.0 * angles.genus - angles.n) + sum / kTwoPi;
  if (report.chi > kWallTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "chi = " << report.chi << " > 0";
    throw Error(ErrorKind::NotAdmissible, os.str());
  }
  report.flat = std::abs(report.chi) <= kWallTolerance;
  report.hyperbolic = !report.flat;
  report.generic = generic;
  report.small = small;
  return report;
}

double collar_constant(const AngleData& angles) {
  if (angles.theta.empty()) throw Error(ErrorKind::OutOfRange, "no angles");
  for (double theta : angles.theta) {
    if (!(theta > 0.0 && theta < std::numbers::pi)) {
      throw Error(ErrorKind::OutOfRange, "collar constant needs all angles in (0, pi)");
    }
  }
  const double theta_max = *std::max_element(angles.theta.begin(), angles.theta.end());
  return 0.5 * std::acosh(1.0 / std::sin(0.5 * theta_max));
}

// ---------------------------------------------------------------- Decoration

Decoration::Decoration(std::vector<double> eps) : eps_(std::move(eps)) {
  for (double v : eps_) {
    if (!std::isfinite(v) || v < 0.0) throw Error(ErrorKind::OutOfRange, "negative decoration");
  }
}

Decoration Decoration::normalized(std::vector<double> eps) {
  const Decoration raw(std::move(eps));
  const double total = std::accumulate(raw.eps_.begin(), raw.eps_.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorKind::OutOfRange, "cannot normalize a zero decoration");
  std::vector<double> scaled = raw.eps_;
  for (double& v : scaled) v /= total;
  return Decoration(std::move(scaled));
}

Decoration Decoration::standard(const AngleData& angles) {
  return Decoration(std::vector<double>(angles.theta.size(), collar_constant(angles)));
}

void Decoration::check_bound(double bound) const {
  for (double v : eps_) {
    if (!(v < bound)) throw Error(ErrorKind::OutOfRange, "decoration exceeds its bound");
  }
}

std::vector<double> reduced_lengths(const ConeSurface& surface, const Decoration& eps) {
  if (static_cast<int>(eps.size()) != surface.vertex_count()) {
    throw Error(ErrorKind::DimensionMismatch, "decoration has " + std::to_string(eps.size()) +
                                                  " entries, surface has " +
                                                  std::to_string(surface.vertex_count()) +
                                                  " vertices");
  }
  const Triangulation& topo = surface.topology();
  std::vector<double> reduced(surface.edge_count());
  for (int e = 0; e < surface.edge_count(); ++e) {
    const HalfEdge he = topo.halfedges(e)[0];
    reduced[e] = surface.length(e) - (eps.values()[topo.tail(he)] + eps.values()[topo.head(he)]);
  }
  return reduced;
}

}  // namespace hypcone
