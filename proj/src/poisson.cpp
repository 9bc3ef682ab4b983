#include "hypcone/poisson.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <random>
#include <sstream>

#include "hypcone/error.hpp"

namespace hypcone {

double wall_margin(const ConeSurface& surface) {
  double margin = 1.0;
  for (const auto& fan : surface.fans()) margin = std::min(margin, std::abs(std::sin(0.5 * fan.total)));
  return margin;
}

PoissonMatrix eta_matrix(const ConeSurface& surface) {
  classify_angles(surface.angle_data());
  for (const auto& fan : surface.fans()) {
    if (std::abs(std::sin(0.5 * fan.total)) < kEtaWallGuard) {
      std::ostringstream os;
      os.precision(17);
      os << "vertex " << fan.vertex << " has theta = " << fan.total
         << ", |sin(theta/2)| below " << kEtaWallGuard;
      throw Error(ErrorKind::WallAngle, os.str());
    }
  }
  const Triangulation& topo = surface.topology();
  const int n = surface.edge_count();
  PoissonMatrix p{topo.edge_ids(), Eigen::MatrixXd::Zero(n, n)};
  for (const auto& fan : surface.fans()) {
    const double half = 0.5 * fan.total;
    const double denom = std::sin(half);
    const int m = static_cast<int>(fan.germs.size());
    for (int a = 0; a < m; ++a) {
      const int i = topo.edge_of(fan.germs[a]);
      for (int b = a + 1; b < m; ++b) {
        const int j = topo.edge_of(fan.germs[b]);
        const double c = std::sin(half - fan.clockwise_angle(a, b)) / denom;
        p.entries(i, j) += c;
        p.entries(j, i) -= c;
      }
    }
  }
  return p;
}

AngleGradient angle_gradients(const ConeSurface& surface) {
  const Triangulation& topo = surface.topology();
  AngleGradient g{Eigen::MatrixXd::Zero(surface.vertex_count(), surface.edge_count())};
  for (HalfEdge he = 0; he < topo.halfedge_count(); ++he) {
    const HalfEdge before = Triangulation::prev(he);
    const HalfEdge opposite = Triangulation::next(he);
    const auto d = corner_angle_gradient(surface.halfedge_length(he), surface.halfedge_length(before),
                                         surface.halfedge_length(opposite));
    const int h = topo.tail(he);
    g.rows(h, topo.edge_of(he)) += d[0];
    g.rows(h, topo.edge_of(before)) += d[1];
    g.rows(h, topo.edge_of(opposite)) += d[2];
  }
  return g;
}

int numerical_rank(const Eigen::MatrixXd& m, double relative_threshold) {
  if (m.size() == 0) return 0;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  return static_cast<int>((sv.array() > relative_threshold * sv(0)).count());
}

RadicalReport radical_check(const PoissonMatrix& p, const AngleGradient& g) {
  if (g.rows.cols() != p.entries.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "gradient length differs from matrix size");
  }
  RadicalReport report;
  const double p_norm = p.entries.size() ? p.entries.cwiseAbs().rowwise().sum().maxCoeff() : 0.0;
  for (Eigen::Index h = 0; h < g.rows.rows(); ++h) {
    const Eigen::VectorXd grad = g.rows.row(h).transpose();
    const double num = (p.entries * grad).cwiseAbs().maxCoeff();
    const double r = num / (p_norm * grad.cwiseAbs().maxCoeff() + 1.0);
    report.residuals.push_back(r);
    report.max_residual = std::max(report.max_residual, r);
  }
  report.rank = numerical_rank(p.entries);
  if (p.entries.size()) report.singular_values = Eigen::JacobiSVD<Eigen::MatrixXd>(p.entries).singularValues();
  return report;
}

std::vector<Eigen::MatrixXd> eta_derivatives(const ConeSurface& surface, const JacobiOptions& options) {
  const int n = surface.edge_count();
  const auto& base = surface.lengths();
  const double step = options.relative_step * *std::max_element(base.begin(), base.end());
  std::vector<Eigen::MatrixXd> dp(n);
  auto one = [&](int l) {
    std::vector<double> plus = base, minus = base;
    plus[l] += step;
    minus[l] -= step;
    dp[l] = (eta_matrix(surface.with_lengths(plus)).entries -
             eta_matrix(surface.with_lengths(minus)).entries) /
            (2.0 * step);
  };
  const int jobs = std::clamp(options.jobs, 1, std::max(1, n));
  if (jobs == 1) {
    for (int l = 0; l < n; ++l) one(l);
    return dp;
  }
  std::vector<std::future<void>> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (int l = w; l < n; l += jobs) one(l);
    }));
  }
  for (auto& f : workers) f.get();
  return dp;
}

JacobiReport jacobi_residual(const Eigen::MatrixXd& p, const std::vector<Eigen::MatrixXd>& dp) {
  const int n = static_cast<int>(p.rows());
  JacobiReport report;
  report.p_scale = p.size() ? p.cwiseAbs().maxCoeff() : 0.0;
  for (const auto& d : dp) report.dp_scale = std::max(report.dp_scale, d.size() ? d.cwiseAbs().maxCoeff() : 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        double sum = 0.0;
        for (int l = 0; l < n; ++l) {
          sum += p(i, l) * dp[l](j, k) + p(j, l) * dp[l](k, i) + p(k, l) * dp[l](i, j);
        }
        report.raw = std::max(report.raw, std::abs(sum));
        ++report.triples;
      }
    }
  }
  const double scale = report.p_scale * report.dp_scale;
  report.residual = scale > 0.0 ? report.raw / scale : report.raw;
  return report;
}

JacobiReport jacobi_check(const ConeSurface& surface, const JacobiOptions& options) {
  const double margin = wall_margin(surface);
  if (margin < kJacobiWallMargin) {
    std::ostringstream os;
    os << "wall margin " << margin << " below " << kJacobiWallMargin;
    throw Error(ErrorKind::WallAngle, os.str());
  }
  return jacobi_residual(eta_matrix(surface).entries, eta_derivatives(surface, options));
}

JacobiReport fault_injection_residual(const Eigen::MatrixXd& p, const std::vector<Eigen::MatrixXd>& dp,
                                      double eps, std::uint64_t seed) {
  const Eigen::Index n = p.rows();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      q(i, j) = normal(rng);
      q(j, i) = -q(i, j);
    }
  }
  const double scale = p.size() && p.cwiseAbs().maxCoeff() > 0.0 ? p.cwiseAbs().maxCoeff() : 1.0;
  return jacobi_residual(p + eps * scale * q, dp);
}

std::string wp_comparison_note() {
  return "Weil-Petersson relation not computed: eta_WP = (1/8) eta and eta_WP,theta = -(1/8) "
         "eta|_theta differ by a sign; every check in this report is sign-independent.";
}

std::string dump_matrix(const Eigen::MatrixXd& m) {
  std::ostringstream os;
  char buf[64];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      os << (j ? " " : "") << buf;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace hypcone
