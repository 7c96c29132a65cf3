#pragma once

#include <cmath>
#include <vector>

#include "dt/chain.hpp"
#include "dt/rep.hpp"
#include "dt/sampling.hpp"

namespace dt::fixture {

struct Point {
  AngleVector alpha;
  ActionAngleCoords coords;
  TriangleChain chain;
  Representation rep;
};

inline Point random_point(int n, Rng& rng) {
  AngleVector a = random_alpha(n, rng);
  ActionAngleCoords c = random_coords(a, rng);
  TriangleChain ch = build_chain(a, c);
  Representation r = chain_to_rep(ch);
  return {a, c, ch, r};
}

inline Point point_at(const AngleVector& a, const ActionAngleCoords& c) {
  TriangleChain ch = build_chain(a, c);
  Representation r = chain_to_rep(ch);
  return {a, c, ch, r};
}

inline std::vector<double> normalized(std::vector<double> mu) {
  double s = 0.0;
  for (double x : mu) s += x;
  for (double& x : mu) x *= 0.5 / s;
  return mu;
}

// Independent distance oracle: arccosh form.
inline double dist_acosh(HPoint p, HPoint q) {
  const double dx = p.x - q.x, dy = p.y - q.y;
  return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * p.y * q.y));
}

}  // namespace dt::fixture
