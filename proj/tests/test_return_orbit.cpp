#include <gtest/gtest.h>

#include <cmath>

#include "homoclinic/checks.hpp"
#include "homoclinic/return_orbit.hpp"

using namespace homoclinic;

TEST(ExponentConstant, InvertsTheFormula) {
  const double lam = std::log(1.2);
  const int T = 200;
  const int n = 4;
  const double ln = std::log(4.0);
  const double C = 3.5;
  const double lh = (T * lam - ln * ln + 4.0 * ln - C) / (T + C);
  EXPECT_NEAR(exponent_constant(lh, T, n, 1.2), C, 1e-12);
}

TEST(ReturnOrbit, ExponentVariantBeatsEntropyVariant) {
  const PerturbedMap gbar(exponent_variant_config(4, 200));
  const ReturnOrbit o = periodic_return_orbit(gbar, 4);
  EXPECT_NEAR(o.lambda_hat, 0.21611, 1e-3);
  EXPECT_GE(o.lambda_hat, 0.9 * std::log(1.2));
  EXPECT_LT(o.landing_error, 1e-9);
  EXPECT_EQ(o.period(), o.corner_steps + o.transit_steps);

  const PerturbedMap g(entropy_variant_config(2, 200, 2.0));
  const ReturnOrbit og = periodic_return_orbit(g, 2);
  EXPECT_LT(og.lambda_hat, o.lambda_hat);
}

TEST(ReturnOrbit, ExponentApproachesLogLambda) {
  const ReturnOrbit a = periodic_return_orbit(PerturbedMap(exponent_variant_config(4, 200)), 4);
  const ReturnOrbit b = periodic_return_orbit(PerturbedMap(exponent_variant_config(4, 800)), 4);
  const double lam = std::log(1.2);
  EXPECT_LT(std::abs(b.lambda_hat - lam), std::abs(a.lambda_hat - lam));
}
