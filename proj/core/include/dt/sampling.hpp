#pragma once

// Seeded sampling of angle vectors and action-angle coordinates.

#include <cstdint>
#include <random>
#include <vector>

#include "dt/chain.hpp"
#include "dt/surface.hpp"

namespace dt {

/// mt19937_64 with a fixed double conversion so draws match across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

/// alpha_k = 2pi - x_k with x roughly uniform on {x > 0, sum x < 2pi}, kept
/// a little away from the faces; `slack` in (0, 1] keeps lambda away from zero.
AngleVector random_alpha(int n, Rng& rng, double slack = 0.9);

/// Uniform point of the moment simplex whose entries are all >= margin/(n-2)
/// of the total, with gamma uniform on the circle.
ActionAngleCoords random_coords(const AngleVector& alpha, Rng& rng, double margin = 0.05);

/// Point with the given moment values; gamma is drawn uniformly where it is
/// defined and left empty elsewhere.
ActionAngleCoords coords_from_moments(const AngleVector& alpha, const std::vector<double>& mu, Rng& rng);

/// Uniform point on {mu >= 0, sum mu = 1/2} (n-2 entries) with the margin above.
std::vector<double> random_moments(int n, Rng& rng, double margin = 0.05);

}  // namespace dt
