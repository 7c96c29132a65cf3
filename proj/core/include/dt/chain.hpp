#pragma once

// Triangle chains and their action-angle coordinates.
//
// Indexing is 0-based throughout: alpha[k] is the angle at puncture k+1,
// C[k] is C_{k+1}, B[k] is B_{k+1}, beta[k] is beta_{k+1}, gamma[k] is
// gamma_{k+1}, and mu[k] is mu_k (the normalized area of triangle k+1).
//
// Triangle k (0 <= k <= n-3) has vertices (B~_k, C_{k+2}, B~_{k+1}) in
// clockwise order, where B~_0 = C_1, B~_{n-2} = C_n and B~_j = B_j otherwise.

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dt/hyperbolic.hpp"

namespace dt {

namespace tol {
inline constexpr double kArea = 1e-9;
/// Moment values below this build as exactly degenerate triangles.
inline constexpr double kSnap = 1e-12;
/// Rays shorter than this are treated as collapsed when reading gamma.
inline constexpr double kRay = 1e-7;
}  // namespace tol

class CoordinateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Peripheral rotation angles with sum above 2pi(n-1).
class AngleVector {
 public:
  AngleVector() = default;
  /// Throws CoordinateError if n < 4, an angle leaves (0, 2pi), or the
  /// angle condition fails.
  explicit AngleVector(std::vector<double> alpha);

  int n() const { return static_cast<int>(alpha_.size()); }
  double operator[](int k) const { return alpha_[static_cast<std::size_t>(k)]; }
  const std::vector<double>& values() const { return alpha_; }
  /// Sum of the angles minus 2pi(n-1).
  double lambda() const { return lambda_; }

 private:
  std::vector<double> alpha_;
  double lambda_ = 0.0;
};

struct ActionAngleCoords {
  std::vector<double> beta;                 // n-3 values
  std::vector<std::optional<double>> gamma;  // n-3 values, absent on collapsed rays
};

struct MomentValues {
  std::vector<double> mu;  // n-2 values
  double sum() const;
  double min() const;
};

struct TriangleChain {
  AngleVector alpha;
  std::vector<HPoint> C;  // n points
  std::vector<HPoint> B;  // n-3 points

  int n() const { return alpha.n(); }
  /// B~_j: C_1 for j = 0, C_n for j = n-2, B_j otherwise.
  HPoint shared(int j) const;
  Triangle triangle(int k) const;
  double area(int k) const;
};

/// beta extended to the chain ends: 2pi - alpha_1, beta_1..beta_{n-3}, alpha_n.
std::vector<double> extended_beta(const AngleVector& alpha, const std::vector<double>& beta);

MomentValues moment_map(const AngleVector& alpha, const std::vector<double>& beta);
/// Inverse of moment_map; mu must have n-2 entries summing to 1/2.
std::vector<double> beta_from_moments(const AngleVector& alpha, const std::vector<double>& mu);

/// Interior angles (at B~_k, C_{k+2}, B~_{k+1}) of triangle k.
std::array<double, 3> interior_angles(const AngleVector& alpha, const std::vector<double>& beta,
                                      int k);

/// True when gamma_{i+1} (0-based i) must be supplied, i.e. both triangles
/// meeting at B_{i+1} have positive area.
bool gamma_required(const MomentValues& m, int i);

TriangleChain build_chain(const AngleVector& alpha, const ActionAngleCoords& coords);
ActionAngleCoords extract_coords(const TriangleChain& chain);

/// Moves C_1 to i and the first vertex distinct from it onto the upward
/// imaginary axis.
TriangleChain canonicalize(const TriangleChain& chain);

/// Indices k whose triangle has area below tol::kArea, ascending.
std::vector<int> degeneracy_pattern(const TriangleChain& chain);

/// Chain on the sub-sphere with nbar punctures. Needs mu_k = 0 for k >= nbar-2.
TriangleChain restrict_chain(const TriangleChain& chain, int nbar);

/// alpha on the sub-sphere: alpha_1..alpha_{nbar-1}, then
/// alpha_nbar + ... + alpha_n - 2pi(n - nbar).
AngleVector restricted_alpha(const AngleVector& alpha, int nbar);

}  // namespace dt
