#include <gtest/gtest.h>

#include <cmath>

#include "homoclinic/checks.hpp"
#include "homoclinic/perturbation.hpp"

using namespace homoclinic;

namespace {

const PerturbedMap& surrogate() {
  static const PerturbedMap f(surrogate_config());
  return f;
}

}  // namespace

TEST(Perturbation, SurrogateRegion) {
  const WiggleRegion& r = surrogate().region(2);
  EXPECT_EQ(r.entry.N, 45);
  EXPECT_DOUBLE_EQ(r.amplitude, std::pow(1.2, -40.0));
  EXPECT_DOUBLE_EQ(r.y_half, 0.0625 / 45.0);
  EXPECT_THROW((void)surrogate().region(3), DomainError);
}

TEST(Perturbation, RegionFoundInEveryCorner) {
  const WiggleRegion& r = surrogate().region(2);
  for (int i = 0; i < 4; ++i) {
    const DiskPoint p = CornerFrame{i}.from_chart({0.5 * (r.x_lo + r.x_hi), 0.0});
    const auto hit = surrogate().region_of(p);
    ASSERT_TRUE(hit.has_value());
    EXPECT_EQ(hit->n, 2);
    EXPECT_EQ(hit->corner, i);
  }
  EXPECT_FALSE(surrogate().region_of({0.0, 0.0}).has_value());
}

TEST(Perturbation, OnlyMovesVertically) {
  const WiggleRegion& r = surrogate().region(2);
  for (int k = 0; k <= 40; ++k) {
    const DiskPoint u{r.x_lo + (r.x_hi - r.x_lo) * k / 40.0, 0.3 * r.y_half};
    const DiskPoint v = surrogate().apply_chart(r, u);
    EXPECT_EQ(v.x, u.x);
    EXPECT_GE(v.y - u.y, 0.0);
    EXPECT_LE(v.y - u.y, 3.0 * r.amplitude);
  }
  EXPECT_THROW((void)surrogate().apply_chart(r, {0.0, 0.0}), DomainError);
}

TEST(Perturbation, IdentityOffTheRegions) {
  const Params prm;
  for (const DiskPoint p : {DiskPoint{0.1, 0.2}, DiskPoint{-0.45, -0.48}, DiskPoint{1.0, 1.0}}) {
    const DiskPoint a = surrogate()(p);
    const DiskPoint b = f0(p, prm);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.y, b.y);
  }
}

TEST(Perturbation, CornerJacobianShape) {
  // In a corner the x row is untouched: K^-1 and an exact zero.
  const WiggleRegion& r = surrogate().region(2);
  const DiskPoint p = CornerFrame{0}.from_chart({r.x_lo + 0.37 * (r.x_hi - r.x_lo), 0.1 * r.y_half});
  const MapJet j = surrogate().jet(p);
  EXPECT_DOUBLE_EQ(j.jacobian.a, 1.0 / 50.0);
  EXPECT_EQ(j.jacobian.b, 0.0);
}

TEST(Perturbation, ChartJacobianMatchesFiniteDifference) {
  const WiggleRegion& r = surrogate().region(2);
  const double h = 1e-7;
  for (double s : {0.21, 0.5, 0.77}) {
    const DiskPoint u{r.x_lo + s * (r.x_hi - r.x_lo), 0.2 * r.y_half};
    const Mat2 j = surrogate().jacobian_chart(r, u);
    const double dx = (surrogate().displacement(r, DiskPoint{u.x + h, u.y}) -
                       surrogate().displacement(r, DiskPoint{u.x - h, u.y})) /
                      (2 * h);
    EXPECT_NEAR(j.c, dx, 1e-6 * (1.0 + std::abs(dx)));
    EXPECT_EQ(j.a, 1.0);
    EXPECT_EQ(j.b, 0.0);
  }
}

TEST(Perturbation, ExponentVariant) {
  const PerturbedMap f(exponent_variant_config(4, 200));
  const WiggleRegion& r = f.region(4);
  EXPECT_EQ(r.entry.N, 0);
  EXPECT_DOUBLE_EQ(r.amplitude, std::exp(-std::log(4.0) * std::log(4.0)));
  // cos(10 pi n^4 x) vanishes at x = (q + 1/2) / (10 n^4).
  const double n4 = 256.0;
  const double q = std::ceil(10.0 * n4 * r.x_lo) + 3.0;
  const double xz = (q + 0.5) / (10.0 * n4);
  // The cosine argument is about 4e3, so its zero is resolved to ~1e-12.
  EXPECT_NEAR(f.displacement(r, DiskPoint{xz, 0.0}), 0.0, 1e-12);
  EXPECT_GT(std::abs(f.displacement(r, DiskPoint{xz + 0.25 / (10.0 * n4), 0.0})), 0.05);
}

TEST(Perturbation, NoneVariantIsF0) {
  const PerturbedMap f = unperturbed(Params{});
  EXPECT_TRUE(f.regions().empty());
  const DiskPoint p{0.3, -0.2};
  const DiskPoint a = f(p);
  const DiskPoint b = f0(p, Params{});
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
}

TEST(Perturbation, BadConfigRejected) {
  PerturbedMapConfig c = surrogate_config();
  c.n_max = 1;
  EXPECT_THROW(PerturbedMap{c}, ConfigError);
  c = surrogate_config();
  c.schedule.T_explicit[2] = 10;  // N_2 < 2
  EXPECT_THROW(PerturbedMap{c}, ConfigError);
  EXPECT_THROW((void)parse_variant("other"), ConfigError);
}

TEST(Majder, SamplesMustLieInRegion) {
  std::vector<std::pair<int, DiskPoint>> bad{{2, {0.0, 0.0}}};
  EXPECT_THROW((void)check_majder(surrogate(), bad), DomainError);
  const MajderReport m = majder_check(surrogate(), 2, 200, 1);
  EXPECT_EQ(m.samples, 200);
  EXPECT_GT(m.max_ratio, 0.0);
}

TEST(CrTrend, OneTermPerRegion) {
  const auto trend = cr_distance_trend(surrogate(), 50);
  ASSERT_EQ(trend.size(), 1u);
  EXPECT_EQ(trend[0].order_norms.size(), 2u);
  const double amp = std::pow(1.2, -40.0);
  EXPECT_GE(trend[0].order_norms[0], 2.0 * amp);
  EXPECT_LE(trend[0].order_norms[0], 3.0 * amp);
}

TEST(Cocycle, RenormalizedMatchesDirectProduct) {
  const CocycleOracle o = cocycle_oracle(surrogate(), 20, 20, 5);
  EXPECT_LE(o.max_rel_error, 1e-8);
  EXPECT_EQ(o.in_region, 10);
}
