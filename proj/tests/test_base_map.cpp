#include <gtest/gtest.h>

#include <cmath>

#include "homoclinic/base_map.hpp"
#include "homoclinic/checks.hpp"
#include "homoclinic/rng.hpp"

using namespace homoclinic;

namespace {

Params with_K(double K) {
  Params p;
  p.K = K;
  return p;
}

}  // namespace

TEST(Rates, CornerValues) {
  const Params p = with_K(std::exp(4.0));
  EXPECT_NEAR(X0(0.0, p), -2.0, 1e-12);
  EXPECT_NEAR(A0(-0.2, Params{}), std::log(1.2), 1e-12);
  EXPECT_THROW((void)X0(0.6, p), DomainError);
  EXPECT_THROW((void)A0(-0.7, p), DomainError);
}

TEST(Params, Validation) {
  Params p;
  p.K = 10.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = Params{};
  p.Lambda = 1.3;
  EXPECT_THROW(p.validate(), ConfigError);
  p = Params{};
  p.L = 0.5;
  EXPECT_THROW(p.validate(), ConfigError);
  EXPECT_NO_THROW(Params{}.validate());
}

TEST(F0, AffineCornerPoint) {
  const DiskPoint q = f0({-0.45, -0.48}, Params{});
  EXPECT_NEAR(q.x, -0.499, 1e-15);
  EXPECT_NEAR(q.y, -0.476, 1e-15);
}

TEST(F0, FundamentalDomainAnchor) {
  const AnchorCheck a = anchor_check(Params{});
  EXPECT_LE(a.error, 1e-12);
  EXPECT_LE(a.flow_error, 1e-6);
}

TEST(F0, FlowAgreesWithAffineFormulaOnCorner) {
  const AffineCornerCheck c = affine_corner_check(Params{}, 12);
  EXPECT_LE(c.max_error, 1e-7);
}

TEST(F0, Equivariance) {
  const SymmetryCheck s = symmetry_check(Params{}, 200, 3);
  EXPECT_LE(s.max_defect, 1e-7);
  EXPECT_EQ(s.boundary_mismatches, 0);
}

TEST(F0, IdentityNearBoundary) {
  const Params prm;
  for (double r : {1.9, 1.95, 2.0}) {
    for (int k = 0; k < 16; ++k) {
      const double a = 2.0 * std::numbers::pi * k / 16.0;
      const DiskPoint p{r * std::cos(a), r * std::sin(a)};
      const DiskPoint q = f0(p, prm);
      EXPECT_EQ(q.x, p.x);
      EXPECT_EQ(q.y, p.y);
    }
  }
}

TEST(F0, SquareIsInvariant) {
  // The sides of the square are orbits of the flow; points on them stay.
  const Params prm;
  for (double s : {-0.3, 0.0, 0.2, 0.45}) {
    const DiskPoint q = f0({s, -0.5}, prm);
    EXPECT_EQ(q.y, -0.5);
    EXPECT_LT(q.x, s);
  }
}

TEST(F0, JetMatchesFiniteDifferences) {
  const Params prm;
  CounterRng rng(11, 0);
  for (int k = 0; k < 20; ++k) {
    const DiskPoint p = random_disk_point(rng, 1.5);
    const MapJet j = f0_jet(p, prm);
    const double h = 1e-6;
    const DiskPoint px = f0({p.x + h, p.y}, prm);
    const DiskPoint mx = f0({p.x - h, p.y}, prm);
    const DiskPoint py = f0({p.x, p.y + h}, prm);
    const DiskPoint my = f0({p.x, p.y - h}, prm);
    const double scale = 1.0 + std::abs(j.jacobian.a) + std::abs(j.jacobian.d);
    EXPECT_NEAR(j.jacobian.a, (px.x - mx.x) / (2 * h), 1e-5 * scale);
    EXPECT_NEAR(j.jacobian.b, (py.x - my.x) / (2 * h), 1e-5 * scale);
    EXPECT_NEAR(j.jacobian.c, (px.y - mx.y) / (2 * h), 1e-5 * scale);
    EXPECT_NEAR(j.jacobian.d, (py.y - my.y) / (2 * h), 1e-5 * scale);
  }
}

TEST(F0, JacobianDeterminantMatchesCorner) {
  const MapJet j = f0_jet({-0.46, -0.47}, Params{});
  EXPECT_NEAR(j.jacobian.det(), 1.2 / 50.0, 1e-14);
  EXPECT_EQ(j.jacobian.b, 0.0);
}

TEST(Transition, TimeGrowsWithL) {
  const TransitionLaw law = transition_law(Params{}, {20.0, 80.0}, 4);
  ASSERT_EQ(law.rows.size(), 2u);
  EXPECT_GT(law.rows[1].mean_tau, law.rows[0].mean_tau);
}

TEST(Transition, ExitDomainRequired) {
  EXPECT_THROW((void)transition_time({0.0, 0.0}, Params{}), DomainError);
  const DiskPoint p = exit_domain_point(0, Params{});
  EXPECT_TRUE(in_exit_domain(p, Params{}));
  EXPECT_GT(transition_time(p, Params{}), 0);
}

TEST(Contraction, RatiosBelowOne) {
  const ContractionStudy c = contraction_study(Params{}, {20.0}, {1e-1, 1e-3}, fundamental_heights(4));
  EXPECT_TRUE(c.all_below_one);
  for (const auto& r : c.rows) {
    EXPECT_LT(r.ratio, 1.0);
    EXPECT_GT(r.tangent_ratio, 0.0);
  }
}

TEST(Contraction, DomainChecked) {
  EXPECT_THROW((void)check_contraction({-0.3, -0.45}, Params{}), DomainError);
}
