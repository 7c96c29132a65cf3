#include "dt/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dt {

AngleVector::AngleVector(std::vector<double> alpha) : alpha_(std::move(alpha)) {
  if (alpha_.size() < 4) throw CoordinateError("need at least 4 peripheral angles");
  for (double a : alpha_) {
    if (!(a > 0.0 && a < kTwoPi)) {
      throw CoordinateError("peripheral angle outside (0, 2pi): " + std::to_string(a));
    }
  }
  const double sum = std::accumulate(alpha_.begin(), alpha_.end(), 0.0);
  lambda_ = sum - kTwoPi * static_cast<double>(alpha_.size() - 1);
  if (!(lambda_ > 0.0)) {
    throw CoordinateError("angle condition fails: sum of angles must exceed 2pi(n-1)");
  }
}

double MomentValues::sum() const { return std::accumulate(mu.begin(), mu.end(), 0.0); }

double MomentValues::min() const { return *std::min_element(mu.begin(), mu.end()); }

HPoint TriangleChain::shared(int j) const {
  if (j == 0) return C.front();
  if (j == n() - 2) return C.back();
  return B[static_cast<std::size_t>(j - 1)];
}

Triangle TriangleChain::triangle(int k) const {
  return {shared(k), C[static_cast<std::size_t>(k + 1)], shared(k + 1)};
}

double TriangleChain::area(int k) const {
  const Triangle t = triangle(k);
  return triangle_area(t.p1, t.p2, t.p3);
}

std::vector<double> extended_beta(const AngleVector& alpha, const std::vector<double>& beta) {
  std::vector<double> bx;
  bx.reserve(beta.size() + 2);
  bx.push_back(kTwoPi - alpha[0]);
  bx.insert(bx.end(), beta.begin(), beta.end());
  bx.push_back(alpha[alpha.n() - 1]);
  return bx;
}

namespace {

void require_beta_size(const AngleVector& alpha, const std::vector<double>& beta) {
  if (static_cast<int>(beta.size()) != alpha.n() - 3) {
    throw CoordinateError("expected " + std::to_string(alpha.n() - 3) + " beta values, got " +
                          std::to_string(beta.size()));
  }
}

}  // namespace

MomentValues moment_map(const AngleVector& alpha, const std::vector<double>& beta) {
  require_beta_size(alpha, beta);
  const std::vector<double> bx = extended_beta(alpha, beta);
  const double two_lambda = 2.0 * alpha.lambda();
  MomentValues m;
  m.mu.resize(bx.size() - 1);
  for (std::size_t k = 0; k + 1 < bx.size(); ++k) {
    m.mu[k] = (alpha[static_cast<int>(k) + 1] - bx[k] + bx[k + 1] - kTwoPi) / two_lambda;
  }
  return m;
}

std::vector<double> beta_from_moments(const AngleVector& alpha, const std::vector<double>& mu) {
  if (static_cast<int>(mu.size()) != alpha.n() - 2) {
    throw CoordinateError("expected " + std::to_string(alpha.n() - 2) + " moment values");
  }
  std::vector<double> beta(mu.size() - 1);
  double prev = kTwoPi - alpha[0];
  for (std::size_t k = 0; k < beta.size(); ++k) {
    prev = 2.0 * alpha.lambda() * mu[k] + prev - alpha[static_cast<int>(k) + 1] + kTwoPi;
    beta[k] = prev;
  }
  return beta;
}

std::array<double, 3> interior_angles(const AngleVector& alpha, const std::vector<double>& beta,
                                      int k) {
  const std::vector<double> bx = extended_beta(alpha, beta);
  const auto kk = static_cast<std::size_t>(k);
  return {bx[kk] / 2.0, kPi - alpha[k + 1] / 2.0, kPi - bx[kk + 1] / 2.0};
}

bool gamma_required(const MomentValues& m, int i) {
  const auto ii = static_cast<std::size_t>(i);
  return m.mu[ii] > tol::kAngle && m.mu[ii + 1] > tol::kAngle;
}

TriangleChain build_chain(const AngleVector& alpha, const ActionAngleCoords& coords) {
  const int n = alpha.n();
  require_beta_size(alpha, coords.beta);
  if (static_cast<int>(coords.gamma.size()) != n - 3) {
    throw CoordinateError("expected " + std::to_string(n - 3) + " gamma entries");
  }
  for (double b : coords.beta) {
    if (!(b > 0.0 && b < kTwoPi)) throw CoordinateError("beta outside (0, 2pi)");
  }
  const MomentValues m = moment_map(alpha, coords.beta);
  for (std::size_t k = 0; k < m.mu.size(); ++k) {
    if (m.mu[k] < -tol::kAngle) {
      throw CoordinateError("coordinates outside the moment polytope (mu_" + std::to_string(k) +
                            " = " + std::to_string(m.mu[k]) + ")");
    }
  }
  for (int i = 0; i < n - 3; ++i) {
    if (gamma_required(m, i) && !coords.gamma[static_cast<std::size_t>(i)]) {
      throw CoordinateError("gamma_" + std::to_string(i + 1) + " is required at this point");
    }
  }

  TriangleChain ch;
  ch.alpha = alpha;
  ch.C.resize(static_cast<std::size_t>(n));
  ch.B.resize(static_cast<std::size_t>(n - 3));

  // Turtle walk: h sits at B~_k facing C_{k+2}.
  Isometry h = Isometry::identity();
  ch.C[0] = frame_point(h);
  for (int k = 0; k <= n - 3; ++k) {
    const auto [t1, t2, t3] = interior_angles(alpha, coords.beta, k);
    // Areas below kSnap are treated as exact zeros; from the angle sum they
    // would come out as rounding noise and give sides of order 1e-8.
    const double mu = m.mu[static_cast<std::size_t>(k)];
    const double area = mu < tol::kSnap ? 0.0 : alpha.lambda() * mu;
    const double l12 = side_from_angles(t1, t2, t3, area);
    const double l13 = side_from_angles(t1, t3, t2, area);
    ch.C[static_cast<std::size_t>(k + 1)] = frame_point(h * geodesic_step(l12));
    const Isometry g = h * turn(-t1) * geodesic_step(l13);
    if (k == n - 3) {
      ch.C.back() = frame_point(g);
      break;
    }
    ch.B[static_cast<std::size_t>(k)] = frame_point(g);
    const Isometry back = g * turn(kPi - t3);  // at B_{k+1} facing C_{k+2}
    const double gam = coords.gamma[static_cast<std::size_t>(k)].value_or(0.0);
    h = back * turn(-gam);
  }
  return canonicalize(ch);
}

ActionAngleCoords extract_coords(const TriangleChain& chain) {
  const int n = chain.n();
  if (static_cast<int>(chain.C.size()) != n || static_cast<int>(chain.B.size()) != n - 3) {
    throw GeometryError("malformed chain: vertex counts do not match alpha");
  }
  auto ray_ok = [](HPoint v, HPoint p) { return dist(v, p) > tol::kRay; };
  ActionAngleCoords out;
  out.beta.resize(static_cast<std::size_t>(n - 3));
  out.gamma.resize(static_cast<std::size_t>(n - 3));
  for (int i = 0; i < n - 3; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    const HPoint b = chain.B[ii];
    const HPoint c_prev = chain.C[ii + 1];
    const HPoint c_next = chain.C[ii + 2];
    const HPoint far_next = chain.shared(i + 2);
    const HPoint far_prev = chain.shared(i);
    if (ray_ok(b, c_next) && ray_ok(b, far_next)) {
      out.beta[ii] = 2.0 * oriented_angle(b, far_next, c_next);
    } else if (ray_ok(b, c_prev) && ray_ok(b, far_prev)) {
      out.beta[ii] = kTwoPi - 2.0 * oriented_angle(b, c_prev, far_prev);
    } else {
      const double prev = i == 0 ? kTwoPi - chain.alpha[0] : out.beta[ii - 1];
      out.beta[ii] = 2.0 * chain.area(i) + prev - chain.alpha[i + 1] + kTwoPi;
    }
    if (ray_ok(b, c_prev) && ray_ok(b, c_next)) {
      out.gamma[ii] = oriented_angle(b, c_next, c_prev);
    }
  }
  return out;
}

TriangleChain canonicalize(const TriangleChain& chain) {
  const int n = chain.n();
  const HPoint c1 = chain.C.front();
  std::vector<HPoint> order{chain.shared(1), chain.C[1]};
  for (int k = 1; k <= n - 3; ++k) {
    order.push_back(chain.C[static_cast<std::size_t>(k + 1)]);
    order.push_back(chain.shared(k + 1));
  }
  const auto it = std::find_if(order.begin(), order.end(),
                               [&](HPoint q) { return dist(c1, q) > tol::kRay; });
  if (it == order.end()) throw GeometryError("chain collapsed to a single point");
  const Isometry to_canonical = frame_at(c1, direction(c1, *it)).inverse();
  TriangleChain out = chain;
  for (auto& p : out.C) p = apply(to_canonical, p);
  for (auto& p : out.B) p = apply(to_canonical, p);
  return out;
}

std::vector<int> degeneracy_pattern(const TriangleChain& chain) {
  std::vector<int> pattern;
  for (int k = 0; k <= chain.n() - 3; ++k) {
    if (chain.area(k) < tol::kArea) pattern.push_back(k);
  }
  if (static_cast<int>(pattern.size()) == chain.n() - 2) {
    throw GeometryError("every triangle of the chain is degenerate");
  }
  return pattern;
}

AngleVector restricted_alpha(const AngleVector& alpha, int nbar) {
  const int n = alpha.n();
  if (nbar < 4 || nbar > n) throw CoordinateError("sub-sphere size out of range");
  std::vector<double> a(alpha.values().begin(), alpha.values().begin() + (nbar - 1));
  double last = -kTwoPi * static_cast<double>(n - nbar);
  for (int k = nbar - 1; k < n; ++k) last += alpha[k];
  a.push_back(last);
  return AngleVector(std::move(a));
}

TriangleChain restrict_chain(const TriangleChain& chain, int nbar) {
  const int n = chain.n();
  if (nbar < 4 || nbar > n) throw CoordinateError("sub-sphere size out of range");
  for (int k = nbar - 2; k <= n - 3; ++k) {
    if (chain.area(k) >= tol::kArea) {
      throw CoordinateError("restriction needs triangle " + std::to_string(k + 1) +
                            " to be degenerate");
    }
  }
  TriangleChain out;
  out.alpha = restricted_alpha(chain.alpha, nbar);
  out.C.assign(chain.C.begin(), chain.C.begin() + (nbar - 1));
  out.C.push_back(chain.shared(nbar - 2));
  out.B.assign(chain.B.begin(), chain.B.begin() + (nbar - 3));
  return out;
}

}  // namespace dt
