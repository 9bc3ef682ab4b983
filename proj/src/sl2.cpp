#include "hypcone/sl2.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "hypcone/error.hpp"

namespace hypcone {

namespace {

constexpr double kPi = std::numbers::pi;

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

// sinh(x)/x and sin(x)/x without cancellation near 0.
double sinhc(double x) { return std::abs(x) < 1e-8 ? 1.0 + x * x / 6.0 : std::sinh(x) / x; }
double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

Sl2Vector traceless_part(const Sl2Matrix& m) {
  return {0.5 * (m.a() - m.d()), m.b(), m.c()};
}

bool is_identity(const Sl2Matrix& m) {
  const Sl2Matrix n = m.trace() < 0.0 ? m.negated() : m;
  return std::max({std::abs(n.a() - 1.0), std::abs(n.b()), std::abs(n.c()),
                   std::abs(n.d() - 1.0)}) <= kClassifyTolerance;
}

// Counterclockwise angle nu in (0, 2pi) and unit generator Y (Y^2 = -1,
// negative (2,1) entry) of an elliptic element: M = +-(cos(nu/2) + sin(nu/2) Y).
std::pair<double, Sl2Vector> elliptic_data(const Sl2Matrix& m) {
  const double half_trace = 0.5 * m.trace();
  const Sl2Vector t = traceless_part(m);
  const double s = -sign_of(m.c()) * std::sqrt(std::max(0.0, t.determinant()));
  double nu = std::fmod(2.0 * std::atan2(s, half_trace) + 2.0 * kPi, 2.0 * kPi);
  return {nu, (1.0 / s) * t};
}

// Translation length and unit generator (Y^2 = 1) of a hyperbolic element.
std::pair<double, Sl2Vector> hyperbolic_data(const Sl2Matrix& m) {
  const Sl2Matrix n = m.trace() < 0.0 ? m.negated() : m;
  const double half_trace = 0.5 * n.trace();
  const double length = 2.0 * std::acosh(half_trace);
  const Sl2Vector t = traceless_part(n);
  const double s = std::sqrt(std::max(0.0, -t.determinant()));
  return {length, (1.0 / s) * t};
}

}  // namespace

// ---------------------------------------------------------------- Sl2Vector

double Sl2Vector::max_abs() const { return std::max({std::abs(h), std::abs(e), std::abs(f)}); }

Eigen::Matrix2d Sl2Vector::to_eigen() const {
  Eigen::Matrix2d m;
  m << h, e, f, -h;
  return m;
}

Sl2Vector Sl2Vector::from_eigen(const Eigen::Matrix2d& m) {
  return {0.5 * (m(0, 0) - m(1, 1)), m(0, 1), m(1, 0)};
}

Sl2Vector bracket(const Sl2Vector& x, const Sl2Vector& y) {
  return {x.e * y.f - y.e * x.f, 2.0 * (x.h * y.e - y.h * x.e), 2.0 * (y.h * x.f - x.h * y.f)};
}

double trace_form(const Sl2Vector& x, const Sl2Vector& y) {
  return 2.0 * x.h * y.h + x.e * y.f + x.f * y.e;
}

Eigen::Matrix3d adjoint_matrix(const Sl2Vector& x) {
  Eigen::Matrix3d ad;
  const Sl2Vector basis[3] = {Sl2Vector::H(), Sl2Vector::E(), Sl2Vector::F()};
  for (int k = 0; k < 3; ++k) {
    const Sl2Vector col = bracket(x, basis[k]);
    ad(0, k) = col.h;
    ad(1, k) = col.e;
    ad(2, k) = col.f;
  }
  return ad;
}

double killing_form(const Sl2Vector& x, const Sl2Vector& y) {
  return (adjoint_matrix(x) * adjoint_matrix(y)).trace();
}

// ----------------------------------------------------------- HyperbolicPoint

HyperbolicPoint::HyperbolicPoint(double x, double y) : x_(x), y_(y) {
  if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    std::ostringstream os;
    os << "point (" << x << ", " << y << ") is not in the upper half-plane";
    throw Error(ErrorKind::OutOfRange, os.str());
  }
}

// ----------------------------------------------------------------- Sl2Matrix

Sl2Matrix::Sl2Matrix(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
  const double det = determinant();
  if (!std::isfinite(det) || std::abs(det - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "determinant " << det << " is not 1";
    throw Error(ErrorKind::NotUnimodular, os.str());
  }
  renormalize();
}

Sl2Matrix::Sl2Matrix(double a, double b, double c, double d, Raw) : a_(a), b_(b), c_(c), d_(d) {
  const double det = determinant();
  if (!(det > 0.0) || !std::isfinite(det)) {
    throw Error(ErrorKind::NotUnimodular, "product lost positivity of the determinant");
  }
  renormalize();
}

void Sl2Matrix::renormalize() {
  const double det = determinant();
  if (std::abs(det - 1.0) > kDetTolerance) {
    const double k = 1.0 / std::sqrt(det);
    a_ *= k;
    b_ *= k;
    c_ *= k;
    d_ *= k;
  }
}

Sl2Matrix Sl2Matrix::from_eigen(const Eigen::Matrix2d& m) {
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

Eigen::Matrix2d Sl2Matrix::to_eigen() const {
  Eigen::Matrix2d m;
  m << a_, b_, c_, d_;
  return m;
}

Sl2Matrix Sl2Matrix::normalized() const {
  const double t = trace();
  bool flip = false;
  if (t != 0.0) {
    flip = t < 0.0;
  } else if (c_ != 0.0) {
    flip = c_ < 0.0;
  } else {
    flip = b_ < 0.0;
  }
  return flip ? negated() : *this;
}

Sl2Matrix operator*(const Sl2Matrix& m, const Sl2Matrix& n) {
  return {m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_, m.c_ * n.a_ + m.d_ * n.c_,
          m.c_ * n.b_ + m.d_ * n.d_, Sl2Matrix::Raw{}};
}

std::complex<double> Sl2Matrix::apply(std::complex<double> z) const {
  return (a_ * z + b_) / (c_ * z + d_);
}

HyperbolicPoint Sl2Matrix::apply(const HyperbolicPoint& p) const {
  return HyperbolicPoint::from_complex(apply(p.z()));
}

Sl2Vector Sl2Matrix::adjoint(const Sl2Vector& x) const {
  return Sl2Vector::from_eigen(to_eigen() * x.to_eigen() * inverse().to_eigen());
}

double projective_distance(const Sl2Matrix& m, const Sl2Matrix& n) {
  const Eigen::Matrix2d a = m.to_eigen();
  const Eigen::Matrix2d b = n.to_eigen();
  return std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff());
}

Sl2Matrix power(const Sl2Matrix& m, int exponent) {
  Sl2Matrix base = exponent < 0 ? m.inverse() : m;
  Sl2Matrix result;
  for (int k = std::abs(exponent); k > 0; --k) result = result * base;
  return result;
}

// ------------------------------------------------------------ classification

IsometryClass classify(const Sl2Matrix& m) {
  const double abs_trace = std::abs(m.trace());
  if (std::abs(abs_trace - 2.0) <= kClassifyTolerance) {
    if (is_identity(m)) return {IsometryKind::Identity, 0.0};
    return {IsometryKind::Parabolic, 0.0};
  }
  if (abs_trace < 2.0) return {IsometryKind::Elliptic, elliptic_data(m).first};
  return {IsometryKind::Hyperbolic, hyperbolic_data(m).first};
}

Sl2Vector sl2_log(const Sl2Matrix& m) {
  const IsometryClass cls = classify(m);
  switch (cls.kind) {
    case IsometryKind::Identity:
      throw Error(ErrorKind::NoBranch, "identity has no distinguished logarithm");
    case IsometryKind::Parabolic:
      if (m.trace() < 0.0) {
        throw Error(ErrorKind::NoBranch, "parabolic element with trace -2");
      }
      return traceless_part(m);
    case IsometryKind::Elliptic: {
      const auto [nu, unit] = elliptic_data(m);
      return (0.5 * nu) * unit;
    }
    case IsometryKind::Hyperbolic: {
      const auto [length, unit] = hyperbolic_data(m);
      return (0.5 * length) * unit;
    }
  }
  return {};
}

Sl2Matrix sl2_exp(const Sl2Vector& x) {
  // X^2 = kappa * I with kappa = -det X.
  const double kappa = -x.determinant();
  double c = 1.0;
  double k = 1.0;
  if (kappa > 0.0) {
    const double r = std::sqrt(kappa);
    c = std::cosh(r);
    k = sinhc(r);
  } else if (kappa < 0.0) {
    const double r = std::sqrt(-kappa);
    c = std::cos(r);
    k = sinc(r);
  }
  return {c + k * x.h, k * x.e, k * x.f, c - k * x.h};
}

Sl2Vector axis_vector(const Sl2Matrix& m) {
  const IsometryClass cls = classify(m);
  if (cls.kind == IsometryKind::Elliptic) return elliptic_data(m).second;
  if (cls.kind == IsometryKind::Hyperbolic) return hyperbolic_data(m).second;
  throw Error(ErrorKind::NotSemisimple, "axis vector needs an elliptic or hyperbolic element");
}

HyperbolicPoint fixed_point(const Sl2Matrix& m) {
  if (classify(m).kind != IsometryKind::Elliptic) {
    throw Error(ErrorKind::NotElliptic, "fixed point in H needs an elliptic element");
  }
  // Roots of c z^2 + (d - a) z - b = 0; the discriminant is Tr^2 - 4 < 0.
  const double t = m.trace();
  const double im = std::sqrt(4.0 - t * t) / (2.0 * std::abs(m.c()));
  const double re = (m.a() - m.d()) / (2.0 * m.c());
  return {re, im};
}

double hyp_distance(const HyperbolicPoint& p, const HyperbolicPoint& q) {
  // cosh d = 1 + |p-q|^2/(2 Im p Im q), written as 2 asinh(...) for accuracy.
  const double chord = std::abs(p.z() - q.z());
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.y() * q.y())));
}

// ------------------------------------------------------------------ isometries

Sl2Matrix rotation_about(const HyperbolicPoint& p, double angle) {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const Sl2Matrix k{c, s, -s, c};
  return k.conjugate_by(lift_from_i(p));
}

Sl2Matrix lift_from_i(const HyperbolicPoint& p) {
  const double r = std::sqrt(p.y());
  return {r, p.x() / r, 0.0, 1.0 / r};
}

Sl2Matrix frame_through(const HyperbolicPoint& p, const HyperbolicPoint& q) {
  const Sl2Matrix lift = lift_from_i(p);
  const std::complex<double> w = lift.inverse().apply(q.z());
  const std::complex<double> i(0.0, 1.0);
  const double phi = std::arg((w - i) / (w + i));
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  return lift * Sl2Matrix{c, s, -s, c};
}

Sl2Matrix transvection(const HyperbolicPoint& p, const HyperbolicPoint& q) {
  const double d = hyp_distance(p, q);
  const Sl2Matrix push{std::exp(0.5 * d), 0.0, 0.0, std::exp(-0.5 * d)};
  return push.conjugate_by(frame_through(p, q));
}

std::pair<BoundaryPoint, BoundaryPoint> axis_endpoints(const Sl2Matrix& r) {
  if (classify(r).kind != IsometryKind::Hyperbolic) {
    throw Error(ErrorKind::NotHyperbolic, "axis endpoints need a hyperbolic element");
  }
  const Sl2Matrix n = r.normalized();
  const double half = 0.5 * n.trace();
  const double root = std::sqrt(half * half - 1.0);
  auto eigen_point = [&](double lambda) {
    // Eigenvector (b, lambda - a) or (lambda - d, c), whichever is better scaled.
    const double v1 = n.b(), v2 = lambda - n.a();
    const double w1 = lambda - n.d(), w2 = n.c();
    const bool first = std::hypot(v1, v2) >= std::hypot(w1, w2);
    const double top = first ? v1 : w1;
    const double bottom = first ? v2 : w2;
    if (std::abs(bottom) <= 1e-300 * std::abs(top) || bottom == 0.0) return BoundaryPoint{0.0, true};
    return BoundaryPoint{top / bottom, false};
  };
  // The eigenvalue above 1 belongs to the attracting fixed point.
  return {eigen_point(half - root), eigen_point(half + root)};
}

double signed_axis_distance(const Sl2Matrix& r, const HyperbolicPoint& p) {
  const auto [from, to] = axis_endpoints(r);
  // g maps 0 -> from and infinity -> to, preserving orientation.
  Sl2Matrix g;
  if (to.infinite) {
    g = Sl2Matrix{1.0, from.x, 0.0, 1.0};
  } else if (from.infinite) {
    g = Sl2Matrix{to.x, -1.0, 1.0, 0.0};
  } else {
    const double sigma = sign_of(to.x - from.x);
    const double k = 1.0 / std::sqrt(std::abs(to.x - from.x));
    g = Sl2Matrix{k * to.x, k * sigma * from.x, k, k * sigma};
  }
  const HyperbolicPoint q = g.inverse().apply(p);
  // Distance from x + iy to the imaginary axis: sinh d = |x|/y.
  return std::asinh(q.x() / q.y());
}

// ------------------------------------------------------------------- pairings

EllipticPairing elliptic_pair_pairing(const Sl2Matrix& s1, const Sl2Matrix& s2) {
  const HyperbolicPoint x1 = fixed_point(s1);
  const HyperbolicPoint x2 = fixed_point(s2);
  if (hyp_distance(x1, x2) < 1e-12) {
    throw Error(ErrorKind::CoincidentFixedPoints, "elliptic elements share their fixed point");
  }
  const Sl2Vector l1 = axis_vector(s1);
  const Sl2Vector l2 = axis_vector(s2);
  return {trace_form(l1, l2), bracket(l1, l2)};
}

double geodesic_pair_pairing(const Sl2Matrix& r1, const Sl2Matrix& r2) {
  if (classify(r1).kind != IsometryKind::Hyperbolic ||
      classify(r2).kind != IsometryKind::Hyperbolic) {
    throw Error(ErrorKind::NotHyperbolic, "geodesic pairing needs hyperbolic elements");
  }
  return trace_form(axis_vector(r1), axis_vector(r2));
}

GeodesicPairDecoding decode_geodesic_pairing(double pairing) {
  const double half = 0.5 * pairing;
  if (std::abs(std::abs(half) - 1.0) <= kClassifyTolerance) {
    return {AxisRelation::Asymptotic, 0.0};
  }
  if (std::abs(half) < 1.0) return {AxisRelation::Crossing, std::acos(half)};
  return {AxisRelation::Disjoint, std::acosh(std::abs(half))};
}

double mixed_pairing(const Sl2Matrix& r, const Sl2Matrix& s) {
  if (classify(r).kind != IsometryKind::Hyperbolic) {
    throw Error(ErrorKind::NotHyperbolic, "first argument must be hyperbolic");
  }
  if (classify(s).kind != IsometryKind::Elliptic) {
    throw Error(ErrorKind::NotElliptic, "second argument must be elliptic");
  }
  return trace_form(axis_vector(r), axis_vector(s));
}

Sl2Vector log_perturbation(const Sl2Vector& s, const Sl2Vector& u) {
  const double bss = trace_form(s, s);
  const double scale = std::max(1.0, s.max_abs() * s.max_abs());
  if (std::abs(bss) <= 1e-12 * scale) {
    throw Error(ErrorKind::DegenerateDirection, "s is nilpotent, B(s,s) = 0");
  }
  const Sl2Matrix big_s = sl2_exp(s);
  // A y = (1 - Ad_S) y + (B(y,s)/B(s,s)) s is (1 - Ad_S) on s-perp and the
  // identity along s, so A y = [u,s] forces y into s-perp.
  const Sl2Vector basis[3] = {Sl2Vector::H(), Sl2Vector::E(), Sl2Vector::F()};
  Eigen::Matrix3d a;
  for (int k = 0; k < 3; ++k) {
    const Sl2Vector col = basis[k] - big_s.adjoint(basis[k]) +
                          (trace_form(basis[k], s) / bss) * s;
    a(0, k) = col.h;
    a(1, k) = col.e;
    a(2, k) = col.f;
  }
  const Eigen::FullPivLU<Eigen::Matrix3d> lu(a);
  if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-12) {
    throw Error(ErrorKind::DegenerateDirection, "1 - Ad_S is singular on s-perp");
  }
  const Sl2Vector rhs = bracket(u, s);
  const Eigen::Vector3d y = lu.solve(Eigen::Vector3d(rhs.h, rhs.e, rhs.f));
  return Sl2Vector{y(0), y(1), y(2)} + (trace_form(u, s) / bss) * s;
}

// ------------------------------------------------ elliptic products and order q

Sl2Matrix elliptic_product_matrix(double theta_h, double theta_j, double d) {
  for (double theta : {theta_h, theta_j}) {
    if (!(theta > 0.0 && theta < 2.0 * kPi)) {
      throw Error(ErrorKind::OutOfRange, "reduced angles must lie in (0, 2pi)");
    }
  }
  if (!(d >= 0.0)) throw Error(ErrorKind::OutOfRange, "distance must be nonnegative");
  const double ch = std::cos(0.5 * theta_h), sh = std::sin(0.5 * theta_h);
  const double cj = std::cos(0.5 * theta_j), sj = std::sin(0.5 * theta_j);
  const Sl2Matrix hol_h{ch, -sh, sh, ch};
  const Sl2Matrix hol_j{cj, -std::exp(d) * sj, std::exp(-d) * sj, cj};
  return hol_h * hol_j;
}

double elliptic_product_trace(double theta_h, double theta_j, double d) {
  return std::abs(elliptic_product_matrix(theta_h, theta_j, d).trace());
}

OrderQSolution solve_order_q_distance(double theta_h, double theta_j, int p, int q) {
  if (!(0 < p && p < q) || std::gcd(p, q) != 1) {
    throw Error(ErrorKind::OutOfRange, "need coprime 0 < p < q");
  }
  if (!(theta_h + theta_j > 2.0 * kPi)) {
    throw Error(ErrorKind::NoSolution, "angle sum must exceed 2pi");
  }
  const double target = 2.0 * std::abs(std::cos(kPi * p / q));
  const double ch = std::cos(0.5 * theta_h), sh = std::sin(0.5 * theta_h);
  const double cj = std::cos(0.5 * theta_j), sj = std::sin(0.5 * theta_j);
  // Half the signed trace, strictly decreasing in d.
  auto half_trace = [&](double d) { return ch * cj - std::cosh(d) * sh * sj; };
  const double start = half_trace(0.0);
  double level;
  const double slack = 1e-12;
  if (start >= 0.5 * target - slack) {
    level = 0.5 * target;
  } else if (start >= -0.5 * target - slack) {
    level = -0.5 * target;
  } else {
    throw Error(ErrorKind::NoSolution, "trace target not reached on the decreasing branch");
  }

  double lo = 0.0;
  double hi = 1.0;
  while (half_trace(hi) > level) hi *= 2.0;
  if (half_trace(lo) == level) hi = lo;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (half_trace(mid) > level ? lo : hi) = mid;
  }
  const double d = std::abs(half_trace(lo) - level) <= std::abs(half_trace(hi) - level) ? lo : hi;
  const Sl2Matrix product = elliptic_product_matrix(theta_h, theta_j, d);
  return {d, product, std::abs(std::abs(product.trace()) - target)};
}

}  // namespace hypcone
