#include "dt/sampling.hpp"

#include <cmath>
#include <numeric>

namespace dt {

namespace {

std::vector<double> simplex_point(std::size_t dim, Rng& rng) {
  std::vector<double> e(dim);
  for (auto& v : e) v = -std::log(1.0 - rng.uniform());
  const double s = std::accumulate(e.begin(), e.end(), 0.0);
  for (auto& v : e) v /= s;
  return e;
}

}  // namespace

AngleVector random_alpha(int n, Rng& rng, double slack) {
  require_sphere(n);
  // One extra coordinate absorbs the gap between sum x and 2pi.
  const std::size_t dim = static_cast<std::size_t>(n + 1);
  const std::vector<double> w = simplex_point(dim, rng);
  const double floor = 0.05 / static_cast<double>(dim);
  std::vector<double> alpha(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    alpha[k] = kTwoPi - slack * kTwoPi * (floor + 0.95 * w[k]);
  }
  return AngleVector(std::move(alpha));
}

std::vector<double> random_moments(int n, Rng& rng, double margin) {
  const auto m = static_cast<std::size_t>(n - 2);
  std::vector<double> mu = simplex_point(m, rng);
  for (auto& v : mu) v = 0.5 * (margin / static_cast<double>(m) + (1.0 - margin) * v);
  return mu;
}

ActionAngleCoords random_coords(const AngleVector& alpha, Rng& rng, double margin) {
  ActionAngleCoords c;
  c.beta = beta_from_moments(alpha, random_moments(alpha.n(), rng, margin));
  for (int i = 0; i < alpha.n() - 3; ++i) c.gamma.emplace_back(rng.uniform(0.0, kTwoPi));
  return c;
}

ActionAngleCoords coords_from_moments(const AngleVector& alpha, const std::vector<double>& mu, Rng& rng) {
  ActionAngleCoords c;
  c.beta = beta_from_moments(alpha, mu);
  const MomentValues mv = moment_map(alpha, c.beta);
  for (int i = 0; i < alpha.n() - 3; ++i) {
    if (gamma_required(mv, i)) {
      c.gamma.emplace_back(rng.uniform(0.0, kTwoPi));
    } else {
      c.gamma.emplace_back(std::nullopt);
    }
  }
  return c;
}

}  // namespace dt
