#include <gtest/gtest.h>

#include <cmath>

#include "homoclinic/analysis.hpp"
#include "homoclinic/checks.hpp"

using namespace homoclinic;

namespace {

/// Constant linear map, for exact exponents.
struct LinearMap {
  Mat2 m;
  [[nodiscard]] MapJet jet(const DiskPoint& p) const { return {DiskPoint{0.5 * p.x, 0.5 * p.y}, m}; }
};

}  // namespace

TEST(Tangent, ExponentOfDiagonalMap) {
  const LinearMap f{Mat2::diag(0.5, 3.0)};
  const TangentOrbit orb = iterate_tangent(f, {0.1, 0.1}, {1.0, 1.0}, 200);
  const LyapunovEstimate e = lyapunov(orb);
  EXPECT_NEAR(e.lambda_hat, std::log(3.0), 1e-2);
  EXPECT_NEAR(orb.log_growth(), direct_log_growth(f, {0.1, 0.1}, {1.0, 1.0}, 200), 1e-9);
  EXPECT_LE(e.liminf_proxy, e.lambda_hat + 1e-12);
}

TEST(Tangent, RejectsZeroVector) {
  const LinearMap f{Mat2::identity()};
  EXPECT_THROW((void)iterate_tangent(f, {0.0, 0.0}, {0.0, 0.0}, 3), DomainError);
  EXPECT_THROW((void)iterate_tangent(f, {0.0, 0.0}, {1.0, 0.0}, 0), DomainError);
}

TEST(Tangent, OracleOnF0) {
  const PerturbedMap f = unperturbed(Params{});
  const CocycleOracle o = cocycle_oracle(f, 10, 20, 9);
  EXPECT_LE(o.max_rel_error, 1e-8);
}

TEST(Delta, Membership) {
  EXPECT_TRUE(in_delta({0.41, -0.3}));
  EXPECT_FALSE(in_delta({0.39, -0.3}));
  EXPECT_FALSE(in_delta({0.41, 0.0}));
  // The rotated copies.
  for (int i = 1; i < 4; ++i) EXPECT_TRUE(in_delta(rotate(i, DiskPoint{0.41, -0.3})));
}

TEST(Blocks, GreedyExample) {
  // Flags indexed by t_j; decomposition of [t_0, t_5[ from the right.
  const std::vector<bool> flags{false, false, true, false, true};
  const BlockDecomposition d = block_decompose(flags, 0, 5);
  ASSERT_EQ(d.blocks.size(), 3u);
  EXPECT_EQ(d.blocks[2], (Block{3, 5, true}));
  EXPECT_EQ(d.blocks[1], (Block{1, 3, true}));
  EXPECT_EQ(d.blocks[0], (Block{0, 1, false}));
  EXPECT_EQ(d.residual, 0);
}

TEST(Blocks, ResidualWhenSpecialAtStart) {
  const std::vector<bool> flags{true};
  const BlockDecomposition d = block_decompose(flags, 0, 1);
  EXPECT_TRUE(d.blocks.empty());
  EXPECT_EQ(d.residual, 1);
}

TEST(Blocks, MatchesBruteForce) {
  const BlockOracle o = block_oracle(500, 12, 17);
  EXPECT_EQ(o.agree, o.sequences);
  EXPECT_EQ(o.ambiguous, 0);
}

TEST(Blocks, BadIndices) {
  const std::vector<bool> flags{false, true};
  EXPECT_THROW((void)block_decompose(flags, 2, 1), DomainError);
  EXPECT_THROW((void)block_decompose(flags, 0, 4), DomainError);
}

TEST(Segments, F0OrbitHasCornerSegments) {
  const BaseMap f{Params{}};
  const TangentOrbit orb = iterate_tangent(f, {-0.45, -0.3}, {0.0, 1.0}, 200);
  const SegmentedOrbit s = segment_orbit(orb);
  ASSERT_FALSE(s.segments.empty());
  for (const auto& seg : s.segments) {
    EXPECT_LE(seg.t_prev, seg.s);
    EXPECT_LE(seg.s, seg.t_next);
    EXPECT_GE(seg.corner, 0);
    EXPECT_LT(seg.corner, 4);
  }
}

TEST(LinearFit, ExactLine) {
  const LinearFit f = linear_fit({1, 2, 3, 4}, {3, 5, 7, 9});
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.r2, 1.0, 1e-14);
}
