#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "avcs/projection.hpp"
#include "oracles.hpp"

using namespace avcs;

namespace {
const BlockDesign kOne(1, 1);
}

TEST(Projection, EqualityClosedForm) {
  const auto p = project_equality(ThetaPair(0.3, 0.7), kOne);
  EXPECT_DOUBLE_EQ(p.theta_circ.a(), 0.5);
  EXPECT_DOUBLE_EQ(p.theta_circ.b(), 0.5);
  EXPECT_NEAR(p.kl_value, 0.16456575701010362, 1e-15);
  const auto q = project_equality(ThetaPair(0.2, 0.5), BlockDesign(1, 3));
  EXPECT_NEAR(q.theta_circ.a(), (0.2 + 1.5) / 4.0, 1e-15);
  EXPECT_THROW(project_equality(ThetaPair(0.0, 0.5), kOne), std::domain_error);
}

TEST(Projection, LineExample) {
  const auto p = project_line(0.1, 1.0, ThetaPair(0.1, 0.5), kOne);
  EXPECT_NEAR(p.theta_circ.a(), 0.23385186644109746, 1e-12);
  EXPECT_NEAR(p.theta_circ.b(), 0.33385186644109743, 1e-12);
  EXPECT_NEAR(p.kl_value, 0.11846890950324279, 1e-12);
  EXPECT_LT(std::abs(line_first_order_residual(1.0, ThetaPair(0.1, 0.5), p.theta_circ, kOne)),
            1e-8);
}

TEST(Projection, HorizontalLine) {
  const auto p = project_line(0.4, 0.0, ThetaPair(0.2, 0.7), BlockDesign(2, 3));
  EXPECT_DOUBLE_EQ(p.theta_circ.a(), 0.2);
  EXPECT_DOUBLE_EQ(p.theta_circ.b(), 0.4);
}

TEST(Projection, HalfPlane) {
  const auto ge = NullSpec::half_plane_ge(0.1, 1.0);
  const auto p = project(ge, ThetaPair(0.5, 0.1), kOne);
  EXPECT_NEAR(p.theta_circ.a(), 0.27079976965970465, 1e-12);
  EXPECT_NEAR(p.theta_circ.b(), 0.3707997696597046, 1e-12);
  EXPECT_NEAR(p.kl_value, 0.3090455746564006, 1e-12);
  EXPECT_FALSE(p.interior_hit);

  const auto inside = project(NullSpec::half_plane_le(0.1, 1.0), ThetaPair(0.2, 0.25), kOne);
  EXPECT_TRUE(inside.interior_hit);
  EXPECT_EQ(inside.theta_circ, ThetaPair(0.2, 0.25));
  EXPECT_EQ(inside.kl_value, 0.0);
}

TEST(Projection, LogOddsExamples) {
  const auto le = project(NullSpec::log_odds_le(2.0), ThetaPair(0.2, 0.8), kOne);
  EXPECT_NEAR(le.theta_circ.a(), 0.2689414213699951, 1e-10);
  EXPECT_NEAR(le.theta_circ.b(), 0.7310585786300049, 1e-10);
  EXPECT_NEAR(le.kl_value, 0.02571852796006993, 1e-12);
  const auto ge = project(NullSpec::log_odds_ge(-2.0), ThetaPair(0.8, 0.2), kOne);
  EXPECT_NEAR(ge.theta_circ.a(), 0.7310585786300049, 1e-10);
  EXPECT_NEAR(ge.theta_circ.b(), 0.2689414213699951, 1e-10);
  EXPECT_NEAR(ge.kl_value, le.kl_value, 1e-12);
}

TEST(Projection, LogOddsBandPicksNearSide) {
  const auto band = NullSpec::log_odds_band(-1.0, 0.5);
  EXPECT_EQ(log_odds_boundary(band, ThetaPair(0.2, 0.8)), 0.5);
  EXPECT_EQ(log_odds_boundary(band, ThetaPair(0.8, 0.2)), -1.0);
  EXPECT_FALSE(log_odds_boundary(band, ThetaPair(0.5, 0.5)).has_value());
}

TEST(Projection, LogOddsLandsOnBoundary) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  std::uniform_real_distribution<double> d(0.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const ThetaPair star(u(rng), u(rng));
    const double delta = d(rng);
    const auto p = project_log_odds_curve(delta, star, BlockDesign(1 + i % 3, 1 + i % 2));
    EXPECT_NEAR(log_odds_ratio(p.theta_circ), delta, 1e-10);
  }
}

TEST(Projection, MatchesGridOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int i = 0; i < 35; ++i) {
    const auto null = oracle::random_null(i % 7, rng);
    const ThetaPair star(u(rng), u(rng));
    const BlockDesign design(1 + i % 3, 1 + (i / 3) % 3);
    const auto p = project(null, star, design);
    const auto g = oracle::grid_projection(null, star, design, 1e-4);
    EXPECT_LE(p.kl_value, g.kl + 1e-10) << null.to_string();
    EXPECT_NEAR(p.kl_value, g.kl, 1e-8) << null.to_string();
    EXPECT_NEAR(p.kl_value, oracle::kl_pair(star, p.theta_circ, design), 1e-12);
    EXPECT_TRUE(membership(null, p.theta_circ) ||
                std::holds_alternative<NullSpec::LogOddsLE>(null.variant()) ||
                std::holds_alternative<NullSpec::LogOddsGE>(null.variant()) ||
                std::holds_alternative<NullSpec::LogOddsBand>(null.variant()))
        << null.to_string();
  }
}

TEST(Projection, RequiresInteriorStar) {
  EXPECT_THROW(project(NullSpec::line(0.1, 1.0), ThetaPair(0.0, 0.5), kOne), std::domain_error);
}
