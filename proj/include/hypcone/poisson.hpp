#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "hypcone/surface.hpp"

namespace hypcone {

/// eta(da_i, da_j) at a point of edge-length space; rows and columns follow
/// the sorted edge ids.
struct PoissonMatrix {
  std::vector<std::string> edge_ids;
  Eigen::MatrixXd entries;

  int size() const { return static_cast<int>(entries.rows()); }
  double max_abs() const { return entries.size() ? entries.cwiseAbs().maxCoeff() : 0.0; }
};

/// Row h holds d(theta_h)/d(a_k) for every edge k.
struct AngleGradient {
  Eigen::MatrixXd rows;
};

/// eta refuses to evaluate when some |sin(theta_h/2)| falls below this.
inline constexpr double kEtaWallGuard = 1e-6;
/// Jacobi certification wants at least this much room to the wall.
inline constexpr double kJacobiWallMargin = 1e-3;

/// min_h |sin(theta_h/2)|: how far the surface is from the coefficient blow-up.
double wall_margin(const ConeSurface& surface);

/// Sum over vertices h and over pairs of distinct germs g_i, g_j at h of
/// sin(theta_h/2 - d(g_i, g_j))/sin(theta_h/2), with d the clockwise angle.
/// Each unordered germ pair is evaluated once and written with opposite
/// signs, so the result is exactly antisymmetric.
PoissonMatrix eta_matrix(const ConeSurface& surface);

AngleGradient angle_gradients(const ConeSurface& surface);

/// Relative singular-value cut used for rank decisions.
inline constexpr double kRankThreshold = 1e-8;
int numerical_rank(const Eigen::MatrixXd& m, double relative_threshold = kRankThreshold);

struct RadicalReport {
  /// ||P grad theta_h||_inf / (||P||_inf ||grad theta_h||_inf + 1) per vertex.
  std::vector<double> residuals;
  double max_residual = 0.0;
  int rank = 0;
  Eigen::VectorXd singular_values;
};

RadicalReport radical_check(const PoissonMatrix& p, const AngleGradient& g);

struct JacobiReport {
  /// raw / (max|P| * max|dP|), or raw when that scale vanishes.
  double residual = 0.0;
  double raw = 0.0;
  double p_scale = 0.0;
  double dp_scale = 0.0;
  int triples = 0;
};

struct JacobiOptions {
  /// Worker threads for the 2N perturbed evaluations.
  int jobs = 1;
  /// Central-difference step as a fraction of max edge length.
  double relative_step = 1e-5;
};

/// dP/da_l by central differences, one matrix per edge l.
std::vector<Eigen::MatrixXd> eta_derivatives(const ConeSurface& surface,
                                             const JacobiOptions& options = {});

/// Max over i<j<k of |sum_l P^il d_l P^jk + P^jl d_l P^ki + P^kl d_l P^ij|.
JacobiReport jacobi_residual(const Eigen::MatrixXd& p, const std::vector<Eigen::MatrixXd>& dp);

/// Throws WallAngle when wall_margin < kJacobiWallMargin.
JacobiReport jacobi_check(const ConeSurface& surface, const JacobiOptions& options = {});

/// Jacobi residual after adding eps * max|P| * Q for a random antisymmetric
/// constant Q (entries standard normal, fixed by seed). Used to show the
/// check actually detects non-Poisson bivectors.
JacobiReport fault_injection_residual(const Eigen::MatrixXd& p,
                                      const std::vector<Eigen::MatrixXd>& dp, double eps,
                                      std::uint64_t seed);

/// The relation to the Weil-Petersson structure is documented, not computed.
std::string wp_comparison_note();

/// Row-major matrix dump, 17 significant digits.
std::string dump_matrix(const Eigen::MatrixXd& m);

}  // namespace hypcone
