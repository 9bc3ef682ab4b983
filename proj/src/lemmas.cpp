#include "hypcone/lemmas.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "hypcone/se2.hpp"
#include "hypcone/sl2.hpp"

namespace hypcone {

namespace {

constexpr double kPi = std::numbers::pi;
using Complex = std::complex<double>;

class Sampler {
 public:
  Sampler(std::uint64_t seed, std::uint64_t salt) : rng_(seed ^ (salt * 0x9e3779b97f4a7c15ULL)) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>()(rng_); }

  HyperbolicPoint point() { return {uniform(-2.0, 2.0), uniform(0.4, 2.5)}; }
  double angle() { return uniform(0.1, 2.0 * kPi - 0.1); }
  Sl2Vector vector() { return {normal(), normal(), normal()}; }

  /// Hyperbolic element with repelling end p, attracting end q.
  std::pair<Sl2Matrix, Eigen::Matrix2d> hyperbolic(double& p, double& q) {
    do {
      p = uniform(-3.0, 3.0);
      q = uniform(-3.0, 3.0);
    } while (std::abs(p - q) < 0.2);
    Eigen::Matrix2d m;
    if (q > p) {
      m << q, p, 1.0, 1.0;
    } else {
      m << q, -p, 1.0, -1.0;
    }
    m /= std::sqrt(std::abs(q - p));
    const double len = uniform(0.2, 3.0);
    const Eigen::Matrix2d d = Eigen::Vector2d(std::exp(0.5 * len), std::exp(-0.5 * len)).asDiagonal();
    return {Sl2Matrix::from_eigen(m * d * m.inverse()), m};
  }

 private:
  std::mt19937_64 rng_;
};

Complex mobius(const Eigen::Matrix2d& m, Complex z) {
  return (m(0, 0) * z + m(0, 1)) / (m(1, 0) * z + m(1, 1));
}

void record(SuiteResult& r, double residual) {
  ++r.count;
  if (!(residual <= r.max_residual)) r.max_residual = std::isnan(residual) ? INFINITY : residual;
}

}  // namespace

SuiteResult suite_elliptic_pairs(const SuiteOptions& options) {
  SuiteResult r{"trig_elliptic", 0, 0.0, options.tolerance};
  Sampler rng(options.seed, 1);
  while (r.count < options.configurations) {
    const HyperbolicPoint x1 = rng.point(), x2 = rng.point();
    const double d = hyp_distance(x1, x2);
    if (d < 1e-3) continue;
    const auto [pairing, br] =
        elliptic_pair_pairing(rotation_about(x1, rng.angle()), rotation_about(x2, rng.angle()));
    const double scale = std::max(1.0, 2.0 * std::cosh(d));
    const Sl2Vector expected = (2.0 * std::sinh(d)) * axis_vector(transvection(x1, x2));
    record(r, std::max(std::abs(pairing + 2.0 * std::cosh(d)), (br - expected).max_abs()) / scale);
  }
  return r;
}

SuiteResult suite_geodesic_pairs(const SuiteOptions& options) {
  SuiteResult r{"trig_geodesic", 0, 0.0, options.tolerance};
  Sampler rng(options.seed, 2);
  while (r.count < options.configurations) {
    double p1, q1, p2, q2;
    const auto [r1, m1] = rng.hyperbolic(p1, q1);
    const auto [r2, m2] = rng.hyperbolic(p2, q2);
    // Move the first axis to 0 -> infinity and read the second one's ends.
    const Eigen::Matrix2d back = m1.inverse();
    const double u = mobius(back, p2).real(), v = mobius(back, q2).real();
    if (std::abs(u) < 1e-3 || std::abs(v) < 1e-3 || std::abs(u - v) < 1e-3) continue;
    const double expected = 2.0 * std::abs(u + v) / std::abs(v - u);
    const double pairing = geodesic_pair_pairing(r1, r2);
    const bool crossing = u * v < 0.0;
    const bool decoded = decode_geodesic_pairing(pairing).relation == AxisRelation::Crossing;
    const double residual = std::abs(std::abs(pairing) - expected) / std::max(1.0, expected);
    record(r, crossing == decoded || std::abs(expected - 2.0) < 1e-6 ? residual : 1.0);
  }
  return r;
}

SuiteResult suite_mixed_pairs(const SuiteOptions& options) {
  SuiteResult r{"trig_mixed", 0, 0.0, options.tolerance};
  Sampler rng(options.seed, 3);
  while (r.count < options.configurations) {
    double p, q;
    const auto [hyp, m] = rng.hyperbolic(p, q);
    const HyperbolicPoint x = rng.point();
    const Complex z = mobius(m.inverse(), x.z());
    // Upward imaginary axis: the right-hand side is Re z > 0.
    const double signed_distance = std::asinh(z.real() / z.imag());
    const double expected = -2.0 * std::sinh(signed_distance);
    const double pairing = mixed_pairing(hyp, rotation_about(x, rng.angle()));
    record(r, std::abs(pairing - expected) / std::max(1.0, std::abs(expected)));
  }
  return r;
}

SuiteResult suite_flat_distance(const SuiteOptions& options) {
  SuiteResult r{"trig_flat_distance", 0, 0.0, options.tolerance};
  Sampler rng(options.seed, 4);
  while (r.count < options.configurations) {
    const PlanePoint c1(rng.uniform(-5, 5), rng.uniform(-5, 5));
    const PlanePoint c2(rng.uniform(-5, 5), rng.uniform(-5, 5));
    const Se2Element s1 = Se2Element::rotation_about(c1, rng.angle());
    const Se2Element s2 = Se2Element::rotation_about(c2, rng.angle());
    const double fixed = std::max((se2_fixed_point(s1) - c1).norm(), (se2_fixed_point(s2) - c2).norm());
    record(r, std::max(fixed, std::abs(se2_pair_distance(s1, s2) - (c1 - c2).norm())));
  }
  return r;
}

SuiteResult suite_flat_orientation(const SuiteOptions& options) {
  SuiteResult r{"trig_flat_orientation", 0, 0.0, options.tolerance};
  Sampler rng(options.seed, 5);
  while (r.count < options.configurations) {
    PlanePoint x[3];
    for (auto& c : x) {
      c = se2_fixed_point(Se2Element::rotation_about(PlanePoint(rng.uniform(-5, 5), rng.uniform(-5, 5)),
                                                     rng.angle()));
    }
    const PlanePoint a = x[1] - x[0], b = x[2] - x[0];
    const double cross = a.x() * b.y() - a.y() * b.x();
    if (std::abs(cross) < 1e-6) continue;
    const int expected = cross > 0.0 ? 1 : -1;
    record(r, triple_orientation(x[0], x[1], x[2]) == expected ? 0.0 : 1.0);
  }
  return r;
}

SuiteResult suite_log_perturbation(const SuiteOptions& options, bool elliptic) {
  SuiteResult r{elliptic ? "log_elliptic" : "log_hyperbolic", 0, 0.0, options.log_tolerance};
  Sampler rng(options.seed, elliptic ? 6 : 7);
  const double ts[3] = {1e-3, 1e-4, 1e-5};
  while (r.count < options.log_pairs) {
    const Sl2Matrix g = sl2_exp(0.25 * rng.vector());
    const Sl2Vector s = elliptic ? (0.5 * rng.uniform(0.3, 2.0 * kPi - 0.8)) * g.adjoint({0.0, 1.0, -1.0})
                                 : (0.5 * rng.uniform(0.2, 3.0)) * g.adjoint(Sl2Vector::H());
    const Sl2Vector u = rng.vector();
    const Eigen::Matrix2d es = s.to_eigen().exp();
    Eigen::Matrix2d f[3];
    for (int k = 0; k < 3; ++k) {
      const Eigen::Matrix2d moved = (ts[k] * u.to_eigen()).exp() * es;
      f[k] = (moved.log() - s.to_eigen()) / ts[k];
    }
    // Neville extrapolation of f(t) to t = 0 through the three samples.
    Eigen::Matrix2d p01 = (ts[1] * f[0] - ts[0] * f[1]) / (ts[1] - ts[0]);
    Eigen::Matrix2d p12 = (ts[2] * f[1] - ts[1] * f[2]) / (ts[2] - ts[1]);
    const Eigen::Matrix2d oracle = (ts[2] * p01 - ts[0] * p12) / (ts[2] - ts[0]);
    const Eigen::Matrix2d got = log_perturbation(s, u).to_eigen();
    record(r, (got - oracle).cwiseAbs().maxCoeff());
  }
  return r;
}

SuiteResult suite_killing(const SuiteOptions& options) {
  SuiteResult r{"killing", 0, 0.0, 1e-10};
  Sampler rng(options.seed, 8);
  double first = 0.0;
  while (r.count < options.configurations) {
    const Sl2Vector x = rng.vector(), y = rng.vector();
    const double b = trace_form(x, y);
    if (std::abs(b) < 0.1) continue;
    const double c = killing_form(x, y) / b;
    if (r.count == 0) first = c;
    record(r, std::abs(c - first));
  }
  r.value = first;
  return r;
}

std::vector<SuiteResult> run_all_suites(const SuiteOptions& options) {
  return {suite_elliptic_pairs(options),        suite_geodesic_pairs(options),
          suite_mixed_pairs(options),           suite_flat_distance(options),
          suite_flat_orientation(options),      suite_log_perturbation(options, true),
          suite_log_perturbation(options, false), suite_killing(options)};
}

}  // namespace hypcone
