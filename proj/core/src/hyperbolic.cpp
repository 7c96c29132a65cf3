#include "dt/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

namespace dt {

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double wrap_signed(double a) {
  double r = wrap_angle(a);
  if (r > kPi) r -= kTwoPi;
  return r;
}

bool HPoint::valid() const { return std::isfinite(x) && std::isfinite(y) && y > 0.0; }

Isometry Isometry::from_entries(double a, double b, double c, double d) {
  const double det = a * d - b * c;
  if (!(det > 0.0) || !std::isfinite(det)) {
    throw GeometryError("isometry entries must have positive determinant");
  }
  const double s = std::sqrt(det);
  return Isometry(a / s, b / s, c / s, d / s);
}

Isometry Isometry::inverse() const { return Isometry(m_[3], -m_[1], -m_[2], m_[0]); }

Isometry operator*(const Isometry& g, const Isometry& h) {
  const double a = g.m_[0] * h.m_[0] + g.m_[1] * h.m_[2];
  const double b = g.m_[0] * h.m_[1] + g.m_[1] * h.m_[3];
  const double c = g.m_[2] * h.m_[0] + g.m_[3] * h.m_[2];
  const double d = g.m_[2] * h.m_[1] + g.m_[3] * h.m_[3];
  const double det = a * d - b * c;
  if (std::abs(det - 1.0) > tol::kDet) {
    const double s = std::sqrt(det);
    return Isometry(a / s, b / s, c / s, d / s);
  }
  return Isometry(a, b, c, d);
}

double Isometry::distance_to(const Isometry& other) const {
  double plus = 0.0;
  double minus = 0.0;
  for (int k = 0; k < 4; ++k) {
    plus = std::max(plus, std::abs(m_[k] - other.m_[k]));
    minus = std::max(minus, std::abs(m_[k] + other.m_[k]));
  }
  return std::min(plus, minus);
}

std::string to_string(IsometryKind kind) {
  switch (kind) {
    case IsometryKind::Identity: return "identity";
    case IsometryKind::Elliptic: return "elliptic";
    case IsometryKind::Parabolic: return "parabolic";
    case IsometryKind::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

HPoint apply(const Isometry& g, HPoint p) {
  const std::complex<double> z = p.z();
  const std::complex<double> den = g.c() * z + g.d();
  if (std::abs(den) < 1e-300) {
    throw GeometryError("point mapped to the boundary at infinity");
  }
  const std::complex<double> w = (g.a() * z + g.b()) / den;
  // Im(g z) = Im(z) / |cz + d|^2 keeps the imaginary part accurate.
  return HPoint{w.real(), p.y / std::norm(den)};
}

double dist(HPoint p, HPoint q) {
  const double chord = std::hypot(p.x - q.x, p.y - q.y);
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.y * q.y)));
}

Isometry rotation_about(HPoint p, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const double x = p.x;
  const double y = p.y;
  // T R T^-1 with T = [[sqrt y, x/sqrt y], [0, 1/sqrt y]].
  const double a = c - s * x / y;
  const double b = s * y + s * x * x / y;
  const double cc = -s / y;
  const double d = c + s * x / y;
  return Isometry::from_entries(a, b, cc, d);
}

IsometryClass classify(const Isometry& g) {
  IsometryClass out;
  const double tr = g.trace();
  out.trace = std::abs(tr);
  if (g.distance_to_identity() < tol::kClass) {
    out.kind = IsometryKind::Identity;
    return out;
  }
  if (std::abs(out.trace - 2.0) < tol::kClass) {
    out.kind = IsometryKind::Parabolic;
    out.near_boundary = true;
    return out;
  }
  if (out.trace > 2.0) {
    out.kind = IsometryKind::Hyperbolic;
    return out;
  }
  out.kind = IsometryKind::Elliptic;
  // Fixed point solves c z^2 + (d - a) z - b = 0; disc = tr^2 - 4 < 0.
  const double c = g.c();
  const double root = std::sqrt((2.0 - out.trace) * (2.0 + out.trace));
  out.fixed_point = HPoint{(g.a() - g.d()) / (2.0 * c), root / (2.0 * std::abs(c))};
  // Derivative at the fixed point is 1/(cz+d)^2, so the counterclockwise
  // rotation angle is -2 arg(cz + d); the sign of the lift drops out.
  const std::complex<double> lam = c * out.fixed_point.z() + g.d();
  out.angle = wrap_angle(-2.0 * std::arg(lam));
  return out;
}

double direction(HPoint from, HPoint to) {
  // Pull `to` back by z -> (z - x)/y, which fixes directions, then read the
  // direction at i through the Cayley transform to the disk.
  const std::complex<double> w((to.x - from.x) / from.y, (to.y - from.y) / from.y);  // w - i
  const std::complex<double> u = w / (w + std::complex<double>(0.0, 2.0));
  if (std::abs(u) == 0.0) {
    throw GeometryError("direction between coincident points");
  }
  return wrap_angle(std::arg(u) + kPi / 2.0);
}

double oriented_angle(HPoint vertex, HPoint p, HPoint q) {
  if (dist(vertex, p) < tol::kGeom || dist(vertex, q) < tol::kGeom) {
    throw GeometryError("oriented angle undefined: ray endpoint coincides with vertex");
  }
  return wrap_angle(direction(vertex, q) - direction(vertex, p));
}

Isometry frame_at(HPoint p, double dir) {
  const double sy = std::sqrt(p.y);
  const Isometry t = Isometry::from_entries(sy, p.x / sy, 0.0, 1.0 / sy);
  return t * turn(dir - kPi / 2.0);
}

Isometry geodesic_step(double length) {
  return Isometry::from_entries(std::exp(length / 2.0), 0.0, 0.0, std::exp(-length / 2.0));
}

Isometry turn(double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  return Isometry::from_entries(c, s, -s, c);
}

double side_from_angles(double adjacent1, double adjacent2, double opposite) {
  return side_from_angles(adjacent1, adjacent2, opposite, kPi - (adjacent1 + adjacent2 + opposite));
}

double side_from_angles(double adjacent1, double adjacent2, double opposite, double area) {
  // sinh^2(c/2) = cos(S/2) cos((a + b - C)/2) / (sin a sin b), S = a + b + C,
  // and cos(S/2) = sin(area/2).
  const double num = std::sin(0.5 * std::max(0.0, area)) * std::cos(0.5 * (adjacent1 + adjacent2 - opposite));
  const double den = std::sin(adjacent1) * std::sin(adjacent2);
  const double s2 = std::max(0.0, num / den);
  return 2.0 * std::asinh(std::sqrt(s2));
}

Triangle triangle_from_angles(double t1, double t2, double t3) {
  for (double t : {t1, t2, t3}) {
    if (!(t > 0.0 && t < kPi)) throw GeometryError("triangle angles must lie in (0, pi)");
  }
  if (t1 + t2 + t3 >= kPi) {
    throw GeometryError("angle sum must be below pi for a hyperbolic triangle");
  }
  const double l12 = side_from_angles(t1, t2, t3);
  const double l13 = side_from_angles(t1, t3, t2);
  Triangle tri;
  tri.p1 = HPoint{0.0, 1.0};
  tri.p2 = frame_point(geodesic_step(l12));
  tri.p3 = frame_point(turn(-t1) * geodesic_step(l13));
  return tri;
}

double triangle_area(HPoint p1, HPoint p2, HPoint p3) {
  // Hyperbolic L'Huilier formula.
  const double a = dist(p2, p3);
  const double b = dist(p1, p3);
  const double c = dist(p1, p2);
  const double s = 0.5 * (a + b + c);
  const double prod = std::tanh(s / 2.0) * std::tanh(std::max(0.0, s - a) / 2.0) *
                      std::tanh(std::max(0.0, s - b) / 2.0) *
                      std::tanh(std::max(0.0, s - c) / 2.0);
  return 4.0 * std::atan(std::sqrt(std::max(0.0, prod)));
}

}  // namespace dt
