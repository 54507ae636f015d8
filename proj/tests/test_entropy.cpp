#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "homoclinic/checks.hpp"
#include "homoclinic/entropy.hpp"

using namespace homoclinic;

namespace {

struct Doubling {
  [[nodiscard]] DiskPoint operator()(const DiskPoint& p) const { return {2.0 * p.x, 2.0 * p.y}; }
};

}  // namespace

TEST(Bowen, DistanceGrowsUnderDoubling) {
  const Doubling f;
  EXPECT_DOUBLE_EQ(bowen_distance(f, {0.0, 0.0}, {0.001, 0.0}, 1), 0.001);
  EXPECT_DOUBLE_EQ(bowen_distance(f, {0.0, 0.0}, {0.001, 0.0}, 4), 0.008);
  EXPECT_DOUBLE_EQ(bowen_distance(f, {0.0, 0.0}, {0.001, 0.0}, 4, 24.0), 0.192);
  EXPECT_THROW((void)bowen_distance(f, {0.0, 0.0}, {0.0, 0.0}, 0), DomainError);
}

TEST(Separated, GreedyCountOnALine) {
  // Ten points 0.01 apart: at eps 0.025 every third point survives.
  std::vector<Orbit> orbits;
  for (int i = 0; i < 10; ++i) orbits.push_back(orbit_of(Doubling{}, {0.01 * i, 0.0}, 1));
  const SeparatedResult r = separated_count(orbits, 0.025, 1);
  EXPECT_EQ(r.count, 4);
  EXPECT_FALSE(r.saturated);
  EXPECT_TRUE(verify_separated(orbits, r, 0.025, 1));
  // Longer orbits separate more points.
  std::vector<Orbit> longer;
  for (int i = 0; i < 10; ++i) longer.push_back(orbit_of(Doubling{}, {0.01 * i, 0.0}, 3));
  EXPECT_TRUE(separated_count(longer, 0.025, 3).saturated);
}

TEST(Separated, RejectsBadInput) {
  std::vector<Orbit> orbits{orbit_of(Doubling{}, {0.0, 0.0}, 2)};
  EXPECT_THROW((void)separated_count(orbits, 0.0, 1), DomainError);
  EXPECT_THROW((void)separated_count(orbits, 0.1, 3), DomainError);
}

TEST(Root, MonotoneRoot) {
  const double r = monotone_root([](double x) { return x * x * x - 2.0; }, 0.0, 2.0);
  EXPECT_NEAR(r, std::cbrt(2.0), 1e-14);
  const double s = monotone_root([](double x) { return 1.0 - std::exp(x); }, -1.0, 3.0);
  EXPECT_NEAR(s, 0.0, 1e-14);
}

TEST(Pairs, StratifiedPairsCoverBands) {
  const auto pairs = stratified_pairs(45, 3);
  EXPECT_EQ(pairs.size(), 20u);
  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : pairs) {
    EXPECT_GE(a, 1);
    EXPECT_LE(a, 44);
    EXPECT_GE(b, 1);
    EXPECT_LE(b, 44);
    seen.insert({a, b});
  }
  EXPECT_GT(seen.size(), 10u);
  EXPECT_EQ(stratified_pairs(45, 3), pairs);
}

TEST(EntropySlope, UnperturbedSlopeIsSmall) {
  const PerturbedMap f = unperturbed(Params{});
  const auto samples = entropy_sample_set(f, 200, 0, 5);
  const auto orbits = orbits_of(f, samples, 60);
  const int a = static_cast<int>(separated_count(orbits, 0.05, 30).count);
  const int b = static_cast<int>(separated_count(orbits, 0.05, 60).count);
  EXPECT_LT(std::log(static_cast<double>(b) / a) / 30.0, 0.01);
}
