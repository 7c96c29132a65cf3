#include <gtest/gtest.h>

#include "dt/rep.hpp"
#include "support.hpp"

using namespace dt;

TEST(Rep, GeneratorProductIsIdentity) {
  Rng rng(1);
  for (int n = 4; n <= 8; ++n) {
    for (int s = 0; s < 10; ++s) EXPECT_LT(product_residual(fixture::random_point(n, rng).rep), 1e-9);
  }
}

TEST(Rep, GeneratorsRotateByAlphaAboutC) {
  Rng rng(2);
  const auto p = fixture::random_point(6, rng);
  for (int k = 1; k <= 6; ++k) {
    const IsometryClass c = classify(p.rep.gen(k));
    ASSERT_EQ(c.kind, IsometryKind::Elliptic);
    EXPECT_NEAR(c.angle, p.alpha[k - 1], 1e-9);
    EXPECT_LT(dist(c.fixed_point, p.chain.C[static_cast<std::size_t>(k - 1)]), 1e-9);
  }
}

TEST(Rep, PantsCurvesRotateByBetaAboutB) {
  Rng rng(3);
  for (int s = 0; s < 20; ++s) {
    const auto p = fixture::random_point(7, rng);
    for (int i = 1; i <= 4; ++i) {
      const IsometryClass c = classify(evaluate(p.rep, curve_b(7, i).word));
      ASSERT_EQ(c.kind, IsometryKind::Elliptic);
      EXPECT_NEAR(c.angle, p.coords.beta[static_cast<std::size_t>(i - 1)], 1e-9);
      EXPECT_LT(dist(c.fixed_point, p.chain.B[static_cast<std::size_t>(i - 1)]), 1e-8);
    }
  }
}

TEST(Rep, RepToChainRecoversVertices) {
  Rng rng(4);
  const auto p = fixture::random_point(6, rng);
  const TriangleChain ch = rep_to_chain(p.rep);
  for (std::size_t k = 0; k < ch.C.size(); ++k) EXPECT_LT(dist(ch.C[k], p.chain.C[k]), 1e-9);
  for (std::size_t k = 0; k < ch.B.size(); ++k) EXPECT_LT(dist(ch.B[k], p.chain.B[k]), 1e-9);
}

TEST(Rep, RepToChainAfterConjugation) {
  Rng rng(5);
  const auto p = fixture::random_point(5, rng);
  const Representation q = conjugate(p.rep, Isometry::from_entries(2.0, 1.0, 0.5, 1.5));
  const ActionAngleCoords e = extract_coords(rep_to_chain(q));
  for (int i = 0; i < 2; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    EXPECT_NEAR(e.beta[ii], p.coords.beta[ii], 1e-9);
    EXPECT_NEAR(circular_diff(*e.gamma[ii], *p.coords.gamma[ii]), 0.0, 1e-9);
  }
}

TEST(Rep, RejectsNonStandardPants) {
  Rng rng(6);
  const auto p = fixture::random_point(5, rng);
  PantsDecomposition other = standard_pants(5);
  other.curves[0] = curve_d(5, 1);
  EXPECT_THROW(rep_to_chain(p.rep, other), TopologyError);
}

TEST(Rep, AngleFunctionIsClassFunction) {
  Rng rng(7);
  const auto p = fixture::random_point(6, rng);
  const Representation q = conjugate(p.rep, Isometry::from_entries(0.3, -2.0, 1.1, 0.4));
  for (const auto& c : standard_curves(6).all()) {
    EXPECT_NEAR(circular_diff(angle_function(p.rep, c), angle_function(q, c)), 0.0, 1e-9);
  }
}

TEST(Rep, AngleFunctionRejectsHyperbolic) {
  Representation r;
  r.alpha = AngleVector({6.0, 6.0, 6.0, 6.0});
  r.gens = {Isometry::from_entries(2, 1, 1, 1), Isometry(), Isometry(), Isometry()};
  CurveClass c;
  c.word = {1};
  EXPECT_THROW(angle_function(r, c), GeometryError);
}

TEST(Rep, AllStandardCurvesElliptic) {
  Rng rng(8);
  for (int s = 0; s < 20; ++s) {
    const auto p = fixture::random_point(6, rng);
    for (const auto& c : standard_curves(6).all()) {
      EXPECT_LT(std::abs(evaluate(p.rep, c.word).trace()), 2.0);
    }
  }
}

TEST(Rep, FingerprintInvariantUnderConjugation) {
  Rng rng(9);
  const auto p = fixture::random_point(5, rng);
  const Fingerprint a = fingerprint(p.rep, 1e-6);
  const Fingerprint b = fingerprint(conjugate(p.rep, Isometry::from_entries(1.0, 3.0, 0.0, 1.0)), 1e-6);
  EXPECT_TRUE(a.same_point(b));
  EXPECT_EQ(a.hex().size(), 16u);
  EXPECT_EQ(a.values.size(), fingerprint_curves(5).size());
}

TEST(Rep, FingerprintSeparatesPoints) {
  Rng rng(10);
  const auto p = fixture::random_point(5, rng);
  const auto q = fixture::random_point(5, rng);
  EXPECT_FALSE(fingerprint(p.rep).same_point(fingerprint(q.rep)));
}

TEST(Rep, NeighbourKeysCoverEdges) {
  Fingerprint fp;
  fp.quantum = 1.0;
  fp.values = {0.5, 2.95};
  fp.key = {0, 2};
  const auto keys = neighbour_keys(fp);
  // Second value sits near the top edge of bucket 2.
  EXPECT_EQ(keys.size(), 2u);
  EXPECT_NE(std::find(keys.begin(), keys.end(), std::vector<std::int64_t>{0, 3}), keys.end());
}

TEST(Rep, InfiniteQuantumGivesZeroKeys) {
  Rng rng(11);
  const auto p = fixture::random_point(4, rng);
  const Fingerprint fp = fingerprint(p.rep, fingerprint_curves(4), std::numeric_limits<double>::infinity());
  for (auto k : fp.key) EXPECT_EQ(k, 0);
}

TEST(Rep, ClosedFormsMatchAngleFunctions) {
  Rng rng(12);
  for (int n = 4; n <= 7; ++n) {
    for (int s = 0; s < 10; ++s) {
      const auto p = fixture::random_point(n, rng);
      for (int i = 1; i <= n - 3; ++i) {
        const ClosedForm d = delta_closed_form(p.chain, i);
        const ClosedForm e = epsilon_closed_form(p.chain, i);
        EXPECT_NEAR(std::cos(angle_function(p.rep, curve_d(n, i)) / 2), d.cos_half, 1e-9);
        EXPECT_NEAR(std::cos(angle_function(p.rep, curve_e(n, i)) / 2), e.cos_half, 1e-9);
        EXPECT_NEAR(circular_diff(d.predicted, angle_function(p.rep, curve_d(n, i))), 0.0, 1e-8);
        EXPECT_NEAR(circular_diff(e.predicted, angle_function(p.rep, curve_e(n, i))), 0.0, 1e-8);
      }
    }
  }
}

TEST(Rep, DeltaIsEvenInGamma) {
  Rng rng(13);
  const AngleVector a = random_alpha(4, rng);
  ActionAngleCoords c = random_coords(a, rng);
  c.gamma[0] = 0.7;
  const double plus = angle_function(fixture::point_at(a, c).rep, curve_d(4, 1));
  c.gamma[0] = kTwoPi - 0.7;
  const double minus = angle_function(fixture::point_at(a, c).rep, curve_d(4, 1));
  EXPECT_NEAR(plus, minus, 1e-9);
}

TEST(Rep, RestrictionMergesTrailingPunctures) {
  Rng rng(14);
  const AngleVector a = random_alpha(6, rng);
  const auto c = coords_from_moments(a, fixture::normalized({0.3, 0.2, 0.0, 0.0}), rng);
  const auto p = fixture::point_at(a, c);
  const Representation r = restrict_rep(p.rep, 4);
  EXPECT_EQ(r.n(), 4);
  EXPECT_LT(product_residual(r), 1e-9);
  const Isometry tail = p.rep.gen(4) * p.rep.gen(5) * p.rep.gen(6);
  EXPECT_LT(r.gen(4).distance_to(tail), 1e-12);
  EXPECT_NEAR(classify(r.gen(4)).angle, restricted_alpha(a, 4)[3], 1e-9);
}

TEST(Rep, NormalizeGaugeKeepsPoint) {
  Rng rng(15);
  const auto p = fixture::random_point(5, rng);
  const Representation q = normalize_gauge(conjugate(p.rep, Isometry::from_entries(4.0, 1.0, 2.0, 1.0)));
  EXPECT_TRUE(fingerprint(q).same_point(fingerprint(p.rep)));
  const IsometryClass c1 = classify(q.gen(1));
  EXPECT_NEAR(c1.fixed_point.x, 0.0, 1e-12);
  EXPECT_NEAR(c1.fixed_point.y, 1.0, 1e-12);
  EXPECT_NEAR(classify(q.gen(2)).fixed_point.x, 0.0, 1e-12);
}
