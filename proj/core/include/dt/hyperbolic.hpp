#pragma once

// Upper half-plane geometry: points, PSL(2,R) isometries acting by Moebius
// maps, rotation angles, distances and triangles.
//
// Orientation: the half-plane carries its complex orientation. A rotation by
// a positive angle turns tangent vectors counterclockwise, which is the sense
// in which the matrix [[cos t/2, sin t/2], [-sin t/2, cos t/2]] rotates about i
// by t.

#include <array>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dt {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

namespace tol {
inline constexpr double kDet = 1e-12;
inline constexpr double kClass = 1e-9;
inline constexpr double kAngle = 1e-9;
inline constexpr double kGeom = 1e-9;
}  // namespace tol

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reduces an angle to [0, 2pi).
double wrap_angle(double a);
/// Reduces an angle to (-pi, pi].
double wrap_signed(double a);
/// Shortest signed distance between two angles on the circle.
inline double circular_diff(double a, double b) { return wrap_signed(a - b); }

struct HPoint {
  double x = 0.0;
  double y = 1.0;

  std::complex<double> z() const { return {x, y}; }
  bool valid() const;
};

/// Unit-determinant real 2x2 matrix, taken up to global sign.
class Isometry {
 public:
  Isometry() = default;

  /// Builds from raw entries and rescales to determinant one.
  /// Throws GeometryError when the determinant is not positive.
  static Isometry from_entries(double a, double b, double c, double d);
  static Isometry identity() { return {}; }

  double a() const { return m_[0]; }
  double b() const { return m_[1]; }
  double c() const { return m_[2]; }
  double d() const { return m_[3]; }
  const std::array<double, 4>& entries() const { return m_; }

  double trace() const { return m_[0] + m_[3]; }
  double det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  Isometry inverse() const;

  /// Composition g*h acts as g(h(z)); the result is renormalized.
  friend Isometry operator*(const Isometry& g, const Isometry& h);

  /// Max-entry distance up to the global sign.
  double distance_to(const Isometry& other) const;
  /// Distance from +-identity.
  double distance_to_identity() const { return distance_to(identity()); }

 private:
  Isometry(double a, double b, double c, double d) : m_{a, b, c, d} {}
  std::array<double, 4> m_{1.0, 0.0, 0.0, 1.0};
};

enum class IsometryKind { Identity, Elliptic, Parabolic, Hyperbolic };

std::string to_string(IsometryKind kind);

struct IsometryClass {
  IsometryKind kind = IsometryKind::Identity;
  double angle = 0.0;     // rotation angle in (0, 2pi); Elliptic only
  HPoint fixed_point{};   // Elliptic only
  double trace = 2.0;     // |trace| of the det-1 lift
  bool near_boundary = false;
};

HPoint apply(const Isometry& g, HPoint p);

/// Hyperbolic distance, computed as 2 asinh(|p-q| / 2 sqrt(y_p y_q)).
double dist(HPoint p, HPoint q);

/// Counterclockwise rotation by theta about p.
Isometry rotation_about(HPoint p, double theta);

IsometryClass classify(const Isometry& g);

/// Direction in [0, 2pi) of the geodesic from `from` toward `to`, measured
/// in the tangent plane at `from` (0 = +x axis, pi/2 = straight up).
double direction(HPoint from, HPoint to);

/// Counterclockwise angle in [0, 2pi) from the ray [vertex, p) to [vertex, q).
/// Throws GeometryError when p or q coincides with the vertex.
double oriented_angle(HPoint vertex, HPoint p, HPoint q);

// Unit tangent frames. PSL(2,R) acts simply transitively on the unit tangent
// bundle, so a frame is stored as the isometry sending (i, upward) to it.

/// Frame based at p pointing in `dir`.
Isometry frame_at(HPoint p, double dir);
/// Moves a frame forward along its geodesic by `length` (right-multiply).
Isometry geodesic_step(double length);
/// Turns a frame counterclockwise by `angle` (right-multiply).
Isometry turn(double angle);
inline HPoint frame_point(const Isometry& frame) { return apply(frame, HPoint{0.0, 1.0}); }

struct Triangle {
  HPoint p1, p2, p3;
};

/// Clockwise triangle with interior angles t1, t2, t3 at p1, p2, p3. p1 is
/// placed at i and p2 straight above it.
Triangle triangle_from_angles(double t1, double t2, double t3);

/// Side length opposite the angle `opposite` given the two adjacent angles,
/// from cosh(c) = (cos a cos b + cos C) / (sin a sin b).
double side_from_angles(double adjacent1, double adjacent2, double opposite);
/// Same with the area pi - (a + b + C) supplied; accurate for tiny triangles
/// when the area is known better than the angle sum.
double side_from_angles(double adjacent1, double adjacent2, double opposite, double area);

/// Non-negative area; exact zero for coincident vertices.
double triangle_area(HPoint p1, HPoint p2, HPoint p3);

}  // namespace dt
