#include <gtest/gtest.h>

#include <cmath>

#include "homoclinic/dual.hpp"
#include "homoclinic/smooth_kit.hpp"

using namespace homoclinic;

TEST(Bump, KnownValues) {
  EXPECT_DOUBLE_EQ(bump(0.25), 0.93503083087133594);
  EXPECT_DOUBLE_EQ(bump(0.75), 0.064969169128664062);
  EXPECT_DOUBLE_EQ(bump(0.5), 0.5);
  EXPECT_EQ(bump(-1.0), 1.0);
  EXPECT_EQ(bump(0.0), 1.0);
  EXPECT_EQ(bump(1.0), 0.0);
  EXPECT_EQ(bump(3.0), 0.0);
}

TEST(Bump, Decreasing) {
  // Flat to double precision within about 0.03 of either end.
  double prev = bump(0.0);
  for (int k = 1; k < 1000; ++k) {
    const double v = bump(k / 1000.0);
    EXPECT_LE(v, prev);
    if (k > 50 && k < 950) EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(Bump, SymmetricAboutHalf) {
  for (double t : {0.1, 0.2, 0.3, 0.45}) EXPECT_NEAR(bump(t) + bump(1.0 - t), 1.0, 1e-15);
}

TEST(FlatCutoff, ComplementsBump) {
  for (double t : {-0.5, 0.0, 0.1, 0.37, 0.5, 0.9, 1.0, 2.0}) {
    EXPECT_NEAR(flat_cutoff_profile(t), 1.0 - bump(t), 1e-15);
  }
}

TEST(FlatCutoff, DerivativeVanishesFasterThanAnyPower) {
  // |alpha'| / alpha^(1-1/r) -> 0 as t -> 0+, here for r = 1 and r = 4.
  double last1 = 1e300;
  double last4 = 1e300;
  for (double t : {0.1, 0.05, 0.02, 0.01}) {
    const Dual a = flat_cutoff_profile(Dual(t, 1.0, 0.0));
    const double q1 = std::abs(a.d[0]);
    const double q4 = std::abs(a.d[0]) / std::pow(a.v, 0.75);
    EXPECT_LT(q1, last1);
    EXPECT_LT(q4, last4);
    last1 = q1;
    last4 = q4;
  }
  EXPECT_LT(last4, 1e-6);
}

TEST(PlateauCutoff, Shape) {
  EXPECT_EQ(plateau_cutoff(0.0), 1.0);
  EXPECT_EQ(plateau_cutoff(0.5), 1.0);
  EXPECT_EQ(plateau_cutoff(-0.5), 1.0);
  EXPECT_EQ(plateau_cutoff(1.0), 0.0);
  EXPECT_EQ(plateau_cutoff(-1.5), 0.0);
  EXPECT_DOUBLE_EQ(plateau_cutoff(0.75), 0.5);
}

TEST(Schedule, SurrogateEntry) {
  PerturbationSchedule s;
  s.n0 = 2;
  s.r = 1.0;
  s.T_explicit[2] = 40;
  const ScheduleEntry e = schedule_entry(s, 2);
  EXPECT_EQ(e.N, 45);
  EXPECT_EQ(e.T, 40);
  EXPECT_DOUBLE_EQ(e.a, 1.25);
  EXPECT_DOUBLE_EQ(e.ell, 0.0625);
  EXPECT_DOUBLE_EQ(e.b, 1.3125);
  EXPECT_NEAR(std::log(static_cast<double>(e.N - 1)) / e.T, 0.0946047408479565, 1e-15);
}

TEST(Schedule, TooFewWigglesRejected) {
  PerturbationSchedule s;
  s.n0 = 2;
  s.r = 2.0;
  s.T_explicit[2] = 40;
  EXPECT_THROW((void)schedule_entry(s, 2), ConfigError);
}

TEST(Schedule, DefaultTIsLinearInN) {
  PerturbationSchedule s;
  EXPECT_EQ(s.T_of(2), 40);
  EXPECT_EQ(s.T_of(5), 100);
}

TEST(Schedule, Validation) {
  PerturbationSchedule s;
  s.n0 = 1;
  EXPECT_THROW((void)validate_schedule(s, 3), ConfigError);
  s.n0 = 2;
  EXPECT_THROW((void)validate_schedule(s, 1), ConfigError);
  s.r = 0.5;
  EXPECT_THROW((void)validate_schedule(s, 2), ConfigError);
  s.r = 1.0;
  s.T_explicit = {{2, 60}, {3, 50}};
  EXPECT_THROW((void)validate_schedule(s, 3), ConfigError);  // T not increasing
  s.T_explicit = {{2, 40}, {3, 60}};
  const auto entries = validate_schedule(s, 3);
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_LT(entries[1].b, entries[0].a);  // R_3 lies left of R_2
}

TEST(Schedule, UnderflowingTRejected) {
  PerturbationSchedule s;
  s.T_explicit[2] = max_representable_T() + 1;
  EXPECT_THROW((void)validate_schedule(s, 2), ConfigError);
}
