#include <gtest/gtest.h>

#include "dt/surface.hpp"
#include "support.hpp"

using namespace dt;

TEST(Surface, LabelsAndWords) {
  EXPECT_EQ(curve_b(6, 2).label(), "b2");
  EXPECT_EQ(curve_b(6, 2).word, (std::vector<int>{-3, -2, -1}));
  EXPECT_EQ(curve_d(6, 1).word, (std::vector<int>{-3, -2}));
  EXPECT_EQ(curve_e(6, 2).word, (std::vector<int>{-4, -2, -1}));
  EXPECT_EQ(curve_pair(6, 5).word, (std::vector<int>{-6, -5}));
  EXPECT_EQ(curve_pair(6, 5).label(), "p5");
}

TEST(Surface, IndexRanges) {
  EXPECT_THROW(curve_b(5, 0), TopologyError);
  EXPECT_THROW(curve_b(5, 3), TopologyError);
  EXPECT_THROW(curve_pair(5, 5), TopologyError);
  EXPECT_THROW(curve_d(3, 1), TopologyError);
  EXPECT_THROW(require_sphere(3), TopologyError);
  EXPECT_NO_THROW(require_sphere(4));
}

TEST(Surface, ParseRoundTrip) {
  for (const auto& c : standard_curves(7).all()) EXPECT_EQ(parse_curve(c.label(), 7), c);
  EXPECT_EQ(parse_curve("p3", 7), curve_pair(7, 3));
  EXPECT_THROW(parse_curve("x1", 7), TopologyError);
  EXPECT_THROW(parse_curve("b", 7), TopologyError);
  EXPECT_THROW(parse_curve("b1a", 7), TopologyError);
  EXPECT_THROW(parse_curve("b9", 7), TopologyError);
}

TEST(Surface, StandardCurveCounts) {
  const StandardCurves sc = standard_curves(8);
  EXPECT_EQ(sc.b.size(), 5u);
  EXPECT_EQ(sc.all().size(), 15u);
  EXPECT_EQ(standard_pants(8).curves, sc.b);
}

TEST(Surface, TwistSides) {
  const TwistSide b = twist_side(curve_b(6, 2), 6);
  EXPECT_EQ(b.inside, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(b.outside, (std::vector<int>{4, 5, 6}));
  EXPECT_EQ(twist_side(curve_e(6, 2), 6).inside, (std::vector<int>{1, 2, 4}));
  EXPECT_EQ(twist_side(curve_d(6, 3), 6).inside, (std::vector<int>{4, 5}));
  CurveClass custom;
  custom.word = {-2, -1};
  EXPECT_THROW(twist_side(custom, 6), TopologyError);
  custom.inside = {2, 1};
  EXPECT_EQ(twist_side(custom, 6).inside, (std::vector<int>{1, 2}));
}

TEST(Surface, WordsEvaluateToInverseProducts) {
  // Oracle: multiply generator matrices directly.
  Rng rng(1);
  const auto p = fixture::random_point(6, rng);
  auto prod = [&](std::vector<int> ks) {
    Isometry g;
    for (int k : ks) g = g * p.rep.gen(k);
    return g.inverse();
  };
  EXPECT_LT(evaluate(p.rep, curve_b(6, 2).word).distance_to(prod({1, 2, 3})), 1e-12);
  EXPECT_LT(evaluate(p.rep, curve_e(6, 3).word).distance_to(prod({1, 2, 3, 5})), 1e-12);
  EXPECT_LT(evaluate(p.rep, curve_d(6, 2).word).distance_to(prod({3, 4})), 1e-12);
}
