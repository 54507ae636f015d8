#include <gtest/gtest.h>

#include <cmath>

#include "homoclinic/lipschitz.hpp"
#include "homoclinic/rng.hpp"

using namespace homoclinic;

TEST(Twist, InverseRoundTrip) {
  TwistModel t;
  t.shear = 1.2;
  CounterRng rng(7, 0);
  for (int k = 0; k < 500; ++k) {
    const DiskPoint u{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
    const DiskPoint w = t.inverse(t(u));
    EXPECT_NEAR(w.x, u.x, 1e-13);
    EXPECT_NEAR(w.y, u.y, 1e-13);
  }
}

TEST(Twist, IdentityOutsideAnnuli) {
  const TwistModel t;
  const DiskPoint far{0.0, 0.47};
  EXPECT_EQ(t(far).x, far.x);
  EXPECT_EQ(t(far).y, far.y);
  EXPECT_EQ(t.angle(t.r_out), 0.0);
  EXPECT_NEAR(t.angle(t.r_out * (1.0 - 1e-12)), 2.0 * std::numbers::pi, 1e-9);
}

TEST(Twist, RejectsBadGeometry) {
  TwistModel t;
  t.shear = 0.0;
  EXPECT_THROW(t.validate(), ConfigError);
  t.shear = 1.0;
  t.offset = 0.25;
  EXPECT_THROW(t.validate(), ConfigError);
}

TEST(Patched, InverseAndSupport) {
  const PatchedMap f = make_patched_map(PatchMode::kIncreasing);
  const DiskFamily& fam = f.family();
  ASSERT_EQ(fam.size(), 4u);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const DiskPoint c = fam.centers[i];
    const double r = fam.radii[i];
    const DiskPoint p{c.x + 0.1 * r, c.y - 0.2 * r};
    const DiskPoint q = f.inverse(f(p));
    EXPECT_NEAR(q.x, p.x, 1e-13);
    EXPECT_NEAR(q.y, p.y, 1e-13);
    // Identity outside the half-radius disk.
    const DiskPoint o{c.x, c.y + 0.6 * r};
    EXPECT_EQ(f(o).y, o.y);
  }
  const DiskPoint away{0.0, 0.9};
  EXPECT_EQ(f(away).x, away.x);
}

TEST(Patched, Shears) {
  const auto inc = mode_shears(PatchMode::kIncreasing, 4, 0.8, 1.5);
  ASSERT_EQ(inc.size(), 4u);
  EXPECT_DOUBLE_EQ(inc.front(), 0.8);
  EXPECT_DOUBLE_EQ(inc.back(), 1.5);
  for (std::size_t i = 1; i < inc.size(); ++i) EXPECT_GT(inc[i], inc[i - 1]);
  for (double c : mode_shears(PatchMode::kConstant, 4, 0.8, 1.5)) EXPECT_DOUBLE_EQ(c, 1.5);
}

TEST(Patched, ModeNames) {
  EXPECT_EQ(parse_patch_mode("h0"), PatchMode::kIncreasing);
  EXPECT_EQ(parse_patch_mode("hinf"), PatchMode::kConstant);
  EXPECT_EQ(to_string(PatchMode::kConstant), "hinf");
  EXPECT_THROW((void)parse_patch_mode("sideways"), ConfigError);
}

TEST(Patched, FamilyIsDisjoint) {
  const DiskFamily fam = geometric_family(6);
  EXPECT_NO_THROW(fam.validate());
  EXPECT_THROW((void)geometric_family(0), ConfigError);
}

TEST(Patched, BiLipBounded) {
  const PatchedMap f = make_patched_map(PatchMode::kConstant);
  const BiLipReport r = bilip_estimate(f, 4000, 11);
  EXPECT_GT(r.lip, 1.0);
  EXPECT_LT(r.bilip(), 20.0);
}

TEST(Patched, EntropyGrowsWithShear) {
  const PatchedMap f = make_patched_map(PatchMode::kIncreasing, 2);
  EntropyWindow w;
  w.samples = 4000;
  const DiskEntropy a = per_disk_entropy(f, 0, w);
  const DiskEntropy b = per_disk_entropy(f, 1, w);
  EXPECT_LT(a.slope, b.slope);
}
