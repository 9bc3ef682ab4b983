#pragma once

// PSL2(R) acting on the upper half-plane and its Lie algebra sl2(R).
//
// Orientation conventions used across the whole library (do not change one
// without the others):
//  * the upper half-plane carries its standard orientation; counterclockwise
//    rotation about i by angle phi is z -> (cz + s)/(-sz + c) with
//    c = cos(phi/2), s = sin(phi/2), i.e. exp((phi/2)(E - F));
//  * L(S) of an elliptic element is the counterclockwise unit generator, a
//    conjugate of E - F (its (2,1) entry is negative);
//  * the positive side of an oriented geodesic is the half-plane on its
//    right, which is what makes B(L(R), L(S)) = -2 sinh(d) hold with the
//    counterclockwise L(S). See signed_axis_distance.

#include <Eigen/Core>
#include <complex>
#include <optional>
#include <utility>

namespace hypcone {

/// Traceless real 2x2 matrix [[h, e], [f, -h]] = hH + eE + fF.
struct Sl2Vector {
  double h = 0.0;
  double e = 0.0;
  double f = 0.0;

  static Sl2Vector H() { return {1.0, 0.0, 0.0}; }
  static Sl2Vector E() { return {0.0, 1.0, 0.0}; }
  static Sl2Vector F() { return {0.0, 0.0, 1.0}; }

  double determinant() const { return -h * h - e * f; }
  double max_abs() const;
  Eigen::Matrix2d to_eigen() const;
  static Sl2Vector from_eigen(const Eigen::Matrix2d& m);

  friend Sl2Vector operator+(Sl2Vector x, const Sl2Vector& y) {
    return {x.h + y.h, x.e + y.e, x.f + y.f};
  }
  friend Sl2Vector operator-(Sl2Vector x, const Sl2Vector& y) {
    return {x.h - y.h, x.e - y.e, x.f - y.f};
  }
  friend Sl2Vector operator*(double k, const Sl2Vector& x) { return {k * x.h, k * x.e, k * x.f}; }
  Sl2Vector operator-() const { return {-h, -e, -f}; }
};

/// Lie bracket XY - YX.
Sl2Vector bracket(const Sl2Vector& x, const Sl2Vector& y);

/// Point z = x + iy of the upper half-plane.
class HyperbolicPoint {
 public:
  HyperbolicPoint(double x, double y);
  static HyperbolicPoint i() { return {0.0, 1.0}; }
  static HyperbolicPoint from_complex(std::complex<double> z) { return {z.real(), z.imag()}; }

  double x() const { return x_; }
  double y() const { return y_; }
  std::complex<double> z() const { return {x_, y_}; }

 private:
  double x_;
  double y_;
};

/// Element of PSL2(R), stored as a unit-determinant representative.
/// The representative is not sign-normalized; use normalized() for the
/// canonical one.
class Sl2Matrix {
 public:
  static constexpr double kDetTolerance = 1e-12;

  Sl2Matrix() = default;
  /// Throws NotUnimodular when det is not within 1e-6 of 1; smaller drift is
  /// divided out.
  Sl2Matrix(double a, double b, double c, double d);

  static Sl2Matrix identity() { return {}; }
  static Sl2Matrix from_eigen(const Eigen::Matrix2d& m);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }
  double trace() const { return a_ + d_; }
  double determinant() const { return a_ * d_ - b_ * c_; }

  Sl2Matrix inverse() const { return {d_, -b_, -c_, a_}; }
  Sl2Matrix negated() const { return {-a_, -b_, -c_, -d_}; }
  /// Tr >= 0; for Tr == 0 the (2,1) entry is positive, or the (1,2) entry
  /// when the (2,1) entry vanishes.
  Sl2Matrix normalized() const;
  Eigen::Matrix2d to_eigen() const;

  /// Moebius action z -> (az + b)/(cz + d).
  HyperbolicPoint apply(const HyperbolicPoint& p) const;
  std::complex<double> apply(std::complex<double> z) const;

  /// Ad_M X = M X M^{-1}.
  Sl2Vector adjoint(const Sl2Vector& x) const;
  Sl2Matrix conjugate_by(const Sl2Matrix& g) const { return g * (*this) * g.inverse(); }

  friend Sl2Matrix operator*(const Sl2Matrix& m, const Sl2Matrix& n);

 private:
  struct Raw {};
  Sl2Matrix(double a, double b, double c, double d, Raw);
  void renormalize();

  double a_ = 1.0;
  double b_ = 0.0;
  double c_ = 0.0;
  double d_ = 1.0;
};

/// Max-entry distance between M and +-N (the smaller of the two).
double projective_distance(const Sl2Matrix& m, const Sl2Matrix& n);
Sl2Matrix power(const Sl2Matrix& m, int exponent);

enum class IsometryKind { Identity, Elliptic, Parabolic, Hyperbolic };

struct IsometryClass {
  IsometryKind kind = IsometryKind::Identity;
  /// Counterclockwise rotation angle in (0, 2pi) for elliptic elements,
  /// translation length for hyperbolic ones, 0 otherwise.
  double parameter = 0.0;
};

/// | |Tr| - 2 | below this is parabolic or identity.
inline constexpr double kClassifyTolerance = 1e-9;

/// 𝔅(X, Y) = Tr(XY).
double trace_form(const Sl2Vector& x, const Sl2Vector& y);
/// Tr(ad_X ad_Y) evaluated from the 3x3 adjoint matrices in the basis (H, E, F).
double killing_form(const Sl2Vector& x, const Sl2Vector& y);
Eigen::Matrix3d adjoint_matrix(const Sl2Vector& x);

IsometryClass classify(const Sl2Matrix& m);

/// Closed-form principal logarithm; elliptic elements get the
/// counterclockwise branch with angle in (0, 2pi).
Sl2Vector sl2_log(const Sl2Matrix& m);
Sl2Matrix sl2_exp(const Sl2Vector& x);

/// L(R) = 2 log(R)/l(R) for hyperbolic R, L(S) = 2 log(S)/nu for elliptic S.
Sl2Vector axis_vector(const Sl2Matrix& m);

HyperbolicPoint fixed_point(const Sl2Matrix& m);
double hyp_distance(const HyperbolicPoint& p, const HyperbolicPoint& q);

// Isometry constructors.

/// Counterclockwise rotation by `angle` about p.
Sl2Matrix rotation_about(const HyperbolicPoint& p, double angle);
/// The isometry taking i to p that fixes the vertical direction.
Sl2Matrix lift_from_i(const HyperbolicPoint& p);
/// The isometry A with A(i) = p and A(i e^{d(p,q)}) = q.
Sl2Matrix frame_through(const HyperbolicPoint& p, const HyperbolicPoint& q);
/// The hyperbolic element translating along the geodesic through p and q,
/// taking p to q.
Sl2Matrix transvection(const HyperbolicPoint& p, const HyperbolicPoint& q);

/// Ideal point of the upper half-plane: a real number or infinity.
struct BoundaryPoint {
  double x = 0.0;
  bool infinite = false;
};

/// Repelling and attracting fixed points of a hyperbolic element; the axis is
/// oriented from the first to the second.
std::pair<BoundaryPoint, BoundaryPoint> axis_endpoints(const Sl2Matrix& r);

/// Signed distance from the oriented axis of R to p, positive on the
/// positive side (right of the axis direction). Computed by moving the axis
/// to the upward imaginary axis; never touches L(R).
double signed_axis_distance(const Sl2Matrix& r, const HyperbolicPoint& p);

struct EllipticPairing {
  double pairing;       // 𝔅(L(S1), L(S2))
  Sl2Vector bracket;    // [L(S1), L(S2)]
};

EllipticPairing elliptic_pair_pairing(const Sl2Matrix& s1, const Sl2Matrix& s2);
double geodesic_pair_pairing(const Sl2Matrix& r1, const Sl2Matrix& r2);

enum class AxisRelation { Crossing, Asymptotic, Disjoint };
struct GeodesicPairDecoding {
  AxisRelation relation;
  /// Crossing angle for crossing axes, distance for disjoint ones.
  double value;
};
/// Reads off the configuration of two oriented axes from their pairing.
GeodesicPairDecoding decode_geodesic_pairing(double pairing);

double mixed_pairing(const Sl2Matrix& r, const Sl2Matrix& s);

/// First-order coefficient in t of log(exp(tu) exp(s)).
Sl2Vector log_perturbation(const Sl2Vector& s, const Sl2Vector& u);

/// |Tr| of the product of the two elliptic holonomies with rotation angles
/// theta_h, theta_j whose centres sit at distance d.
double elliptic_product_trace(double theta_h, double theta_j, double d);
Sl2Matrix elliptic_product_matrix(double theta_h, double theta_j, double d);

struct OrderQSolution {
  double distance;
  Sl2Matrix product;
  double residual;
};

/// Finds d >= 0 where the product trace equals 2|cos(pi p/q)|.
OrderQSolution solve_order_q_distance(double theta_h, double theta_j, int p, int q);

}  // namespace hypcone
