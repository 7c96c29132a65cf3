#include <gtest/gtest.h>

#include <numeric>

#include "dt/chain.hpp"
#include "support.hpp"

using namespace dt;
using fixture::normalized;
using fixture::point_at;

TEST(Chain, AngleVectorValidation) {
  EXPECT_THROW(AngleVector({6.0, 6.0, 6.0}), CoordinateError);
  EXPECT_THROW(AngleVector({1.0, 1.0, 1.0, 1.0}), CoordinateError);
  EXPECT_THROW(AngleVector({7.0, 6.0, 6.0, 6.0}), CoordinateError);
  const AngleVector a({1.9 * kPi, 1.9 * kPi, 1.9 * kPi, 1.9 * kPi});
  EXPECT_NEAR(a.lambda(), 7.6 * kPi - 6 * kPi, 1e-13);
}

TEST(Chain, ExtendedBetaEnds) {
  const AngleVector a({5.8, 5.9, 6.0, 6.1, 6.2});
  const auto bx = extended_beta(a, {2.0, 3.0});
  EXPECT_EQ(bx.size(), 4u);
  EXPECT_DOUBLE_EQ(bx.front(), kTwoPi - 5.8);
  EXPECT_DOUBLE_EQ(bx.back(), 6.2);
}

TEST(Chain, MomentsSumToHalfAndInvert) {
  Rng rng(2);
  for (int n = 4; n <= 9; ++n) {
    for (int s = 0; s < 20; ++s) {
      const AngleVector a = random_alpha(n, rng);
      const auto mu = random_moments(n, rng);
      const auto beta = beta_from_moments(a, mu);
      const MomentValues m = moment_map(a, beta);
      EXPECT_NEAR(m.sum(), 0.5, 1e-12);
      for (std::size_t k = 0; k < mu.size(); ++k) EXPECT_NEAR(m.mu[k], mu[k], 1e-12);
    }
  }
}

TEST(Chain, InteriorAnglesSumToAreaDeficit) {
  Rng rng(3);
  const AngleVector a = random_alpha(6, rng);
  const auto beta = beta_from_moments(a, random_moments(6, rng));
  const MomentValues m = moment_map(a, beta);
  for (int k = 0; k <= 3; ++k) {
    const auto t = interior_angles(a, beta, k);
    EXPECT_NEAR(kPi - (t[0] + t[1] + t[2]), a.lambda() * m.mu[static_cast<std::size_t>(k)], 1e-12);
  }
}

TEST(Chain, RoundTripAcrossSizes) {
  Rng rng(4);
  for (int n = 4; n <= 8; ++n) {
    for (int s = 0; s < 40; ++s) {
      const AngleVector a = random_alpha(n, rng);
      const ActionAngleCoords c = random_coords(a, rng);
      const ActionAngleCoords e = extract_coords(build_chain(a, c));
      for (int i = 0; i < n - 3; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        EXPECT_NEAR(e.beta[ii], c.beta[ii], 1e-9);
        ASSERT_TRUE(e.gamma[ii].has_value());
        EXPECT_NEAR(circular_diff(*e.gamma[ii], *c.gamma[ii]), 0.0, 1e-9);
      }
    }
  }
}

TEST(Chain, GeometricAreasMatchMoments) {
  // L'Huilier areas from side lengths against lambda * mu.
  Rng rng(5);
  for (int s = 0; s < 30; ++s) {
    const auto p = fixture::random_point(7, rng);
    const MomentValues m = moment_map(p.alpha, p.coords.beta);
    for (int k = 0; k <= 4; ++k) {
      EXPECT_NEAR(p.chain.area(k), p.alpha.lambda() * m.mu[static_cast<std::size_t>(k)], 1e-9);
    }
  }
}

TEST(Chain, ExteriorVertexAngles) {
  Rng rng(6);
  const auto p = fixture::random_point(6, rng);
  for (int k = 0; k <= 3; ++k) {
    const Triangle t = p.chain.triangle(k);
    const double x = oriented_angle(t.p2, t.p1, t.p3);
    EXPECT_NEAR(std::min(x, kTwoPi - x), kPi - p.alpha[k + 1] / 2, 1e-9);
  }
}

TEST(Chain, TrianglesAreClockwise) {
  Rng rng(7);
  const auto p = fixture::random_point(5, rng);
  for (int k = 0; k <= 2; ++k) {
    const Triangle t = p.chain.triangle(k);
    // Seen from the first vertex, the third is clockwise of the second.
    EXPECT_GT(oriented_angle(t.p1, t.p2, t.p3), kPi);
  }
}

TEST(Chain, CanonicalPosition) {
  Rng rng(8);
  const auto p = fixture::random_point(5, rng);
  EXPECT_NEAR(p.chain.C[0].x, 0.0, 1e-12);
  EXPECT_NEAR(p.chain.C[0].y, 1.0, 1e-12);
  EXPECT_NEAR(direction(p.chain.C[0], p.chain.B[0]), kPi / 2, 1e-12);
}

TEST(Chain, RejectsBadCoordinates) {
  const AngleVector a({1.9 * kPi, 1.9 * kPi, 1.9 * kPi, 1.9 * kPi});
  EXPECT_THROW(build_chain(a, {{0.05}, {1.0}}), CoordinateError);   // mu_0 < 0
  EXPECT_THROW(build_chain(a, {{3.0}, {std::nullopt}}), CoordinateError);
  EXPECT_THROW(build_chain(a, {{3.0, 1.0}, {1.0, 1.0}}), CoordinateError);
  EXPECT_THROW(build_chain(a, {{7.0}, {1.0}}), CoordinateError);
}

TEST(Chain, DegeneratePatternAndMissingGamma) {
  const AngleVector a({1.9 * kPi, 1.9 * kPi, 1.9 * kPi, 1.9 * kPi, 1.9 * kPi});
  Rng rng(9);
  const auto c = coords_from_moments(a, {0.0, 0.2, 0.3}, rng);
  EXPECT_FALSE(c.gamma[0].has_value());
  ASSERT_TRUE(c.gamma[1].has_value());
  const TriangleChain ch = build_chain(a, c);
  EXPECT_EQ(degeneracy_pattern(ch), (std::vector<int>{0}));
  const ActionAngleCoords e = extract_coords(ch);
  EXPECT_FALSE(e.gamma[0].has_value());
  EXPECT_NEAR(e.beta[0], c.beta[0], 1e-9);
  EXPECT_NEAR(e.beta[1], c.beta[1], 1e-9);
  EXPECT_NEAR(circular_diff(*e.gamma[1], *c.gamma[1]), 0.0, 1e-9);
  // C_1, C_2 and B_1 coincide.
  EXPECT_LT(dist(ch.C[0], ch.B[0]), 1e-9);
  EXPECT_LT(dist(ch.C[1], ch.B[0]), 1e-9);
}

TEST(Chain, RestrictedAlphaKeepsLambda) {
  Rng rng(10);
  for (int n = 5; n <= 8; ++n) {
    const AngleVector a = random_alpha(n, rng);
    for (int nbar = 4; nbar < n; ++nbar) {
      const AngleVector r = restricted_alpha(a, nbar);
      EXPECT_EQ(r.n(), nbar);
      double tail = 0.0;
      for (int k = nbar; k <= n; ++k) tail += a[k - 1];
      EXPECT_NEAR(r[nbar - 1], tail - kTwoPi * (n - nbar), 1e-12);
      EXPECT_NEAR(r.lambda(), a.lambda(), 1e-12);
    }
  }
}

TEST(Chain, RestrictChainKeepsLeadingTriangles) {
  Rng rng(11);
  const AngleVector a = random_alpha(6, rng);
  const auto c = coords_from_moments(a, normalized({0.2, 0.3, 0.0, 0.0}), rng);
  const TriangleChain ch = build_chain(a, c);
  const TriangleChain r = restrict_chain(ch, 4);
  EXPECT_EQ(r.n(), 4);
  const ActionAngleCoords e = extract_coords(r);
  EXPECT_NEAR(e.beta[0], c.beta[0], 1e-9);
  EXPECT_NEAR(circular_diff(*e.gamma[0], *c.gamma[0]), 0.0, 1e-9);
}
