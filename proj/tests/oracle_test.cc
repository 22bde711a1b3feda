#include "minsink/oracle.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "test_util.h"

namespace minsink {
namespace {

using testing::I2;
using testing::I3;
using testing::RelNear;

TEST(PiecewiseLinearFnTest, MaxAndIntegral) {
  PiecewiseLinearFn up;
  up.SetOrigin(0.0, 0.0);
  up.AddPiece(4.0, 0.0, 1.0, 4.0);
  PiecewiseLinearFn down;
  down.SetOrigin(0.0, 3.0);
  down.AddPiece(4.0, 3.0, -1.0, -1.0);
  const PiecewiseLinearFn m = PiecewiseLinearFn::Max(up, down);
  EXPECT_EQ(m(1.5), 1.5);
  EXPECT_EQ(m(0.5), 2.5);
  EXPECT_EQ(m(3.0), 3.0);
  // int_0^1.5 (3 - t) dt + int_1.5^4 t dt
  EXPECT_DOUBLE_EQ(m.Integral(0.0, 4.0), 3.375 + 6.875);
  const PiecewiseLinearFn d = PiecewiseLinearFn::Difference(up, down);
  EXPECT_EQ(d(1.5), 0.0);
  EXPECT_EQ(d.RightLimit(2.0), 1.0);
}

TEST(PiecewiseLinearFnTest, PointValuesAndLimits) {
  PiecewiseLinearFn f;
  f.SetOrigin(0.0, 0.0);
  f.AddPiece(2.0, 0.0, 0.0, 0.0);
  f.AddPiece(5.0, 1.0, 0.5, 2.5);
  EXPECT_EQ(f(2.0), 0.0);
  EXPECT_EQ(f.RightLimit(2.0), 1.0);
  EXPECT_EQ(f.LeftLimit(2.0), 0.0);
  EXPECT_EQ(f(5.0), 2.5);
  EXPECT_EQ(f.Integral(2.0, 5.0), 3.0 * 1.75);
}

TEST(PiecewiseLinearFnTest, SingleLineIntegralIsExact) {
  std::mt19937_64 rng(81);
  for (int trial = 0; trial < 200; ++trial) {
    const double total = testing::Uniform(rng, 2, 30);
    const double thr = testing::Uniform(rng, 0, static_cast<int>(total) - 1);
    const double cap = testing::Uniform(rng, 1, 8);
    const double off = testing::Uniform(rng, 0, 8);
    PiecewiseLinearFn f;
    f.SetOrigin(0.0, 0.0);
    f.AddPiece(thr, 0.0, 0.0, 0.0);
    f.AddPiece(total, off, 1.0 / cap, (total - thr) / cap + off);
    const double z = testing::Uniform(rng, 0, static_cast<int>(total));
    const double d = std::max(0.0, z - thr);
    EXPECT_NEAR(f.Integral(0.0, z), 0.5 * d * d / cap + off * d, 1e-12);
  }
}

TEST(NaiveOracleTest, Theta) {
  const PathNetwork i2 = I2();
  EXPECT_DOUBLE_EQ(NaiveTheta(i2, 1, Side::kPlus, 2.5), 2.5);
  for (double z : {0.0, 1.0, 2.5, 3.0}) {
    EXPECT_EQ(NaiveTheta(i2, 3, Side::kPlus, z), 0.0);
    EXPECT_EQ(NaiveTheta(i2, 1, Side::kMinus, z), 0.0);
  }
  EXPECT_DOUBLE_EQ(NaiveTheta(I3(), 1, Side::kPlus, 4.0), 4.0);
  EXPECT_THROW(NaiveTheta(i2, 4, Side::kPlus, 1.0), std::out_of_range);
}

TEST(NaiveOracleTest, Opt) {
  const PathNetwork i2 = I2();
  OptResult r = NaiveOpt(i2, 1, 3, Model::kNonConfluent);
  EXPECT_DOUBLE_EQ(r.z_star, 1.5);
  EXPECT_DOUBLE_EQ(r.value, 1.25);
  r = NaiveOpt(i2, 1, 3, Model::kConfluent);
  EXPECT_EQ(r.z_star, 1.0);
  EXPECT_DOUBLE_EQ(r.value, 1.5);
  std::mt19937_64 rng(82);
  const PathNetwork net = testing::RandomNetwork(rng, 10);
  NaiveOracle oracle(net);
  for (int i = 1; i < 10; ++i) {
    for (Model m : {Model::kNonConfluent, Model::kConfluent}) {
      r = oracle.Opt(i, i + 1, m);
      EXPECT_EQ(r.z_star, oracle.W(i));
      EXPECT_EQ(r.value, 0.0);
    }
  }
}

TEST(NaiveOracleTest, KSink) {
  const PathNetwork i2 = I2();
  SinkPlan p = NaiveKSink(i2, 2, Model::kNonConfluent);
  EXPECT_DOUBLE_EQ(p.aggregate_time, 1.25);
  p = NaiveKSink(i2, 1, Model::kNonConfluent);
  EXPECT_EQ(p.sinks, (std::vector<int>{2}));
  EXPECT_DOUBLE_EQ(p.aggregate_time, 3.0);
  p = NaiveKSink(i2, 3, Model::kConfluent);
  EXPECT_EQ(p.aggregate_time, 0.0);
  EXPECT_THROW(NaiveKSink(i2, 4, Model::kConfluent), std::out_of_range);
}

TEST(NaiveOracleTest, KSinkMatchesEnumeration) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = testing::Uniform(rng, 2, 9);
    const PathNetwork net = testing::RandomNetwork(rng, n);
    NaiveOracle oracle(net);
    for (Model m : {Model::kNonConfluent, Model::kConfluent}) {
      // Every pair of sinks.
      double best = std::numeric_limits<double>::infinity();
      for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
          best = std::min(best, oracle.LinkWeight(0, a, m) +
                                    oracle.LinkWeight(a, b, m) +
                                    oracle.LinkWeight(b, n + 1, m));
        }
      }
      EXPECT_TRUE(RelNear(oracle.KSink(2, m).aggregate_time, best, 1e-12));
    }
  }
}

TEST(AuditMongeTest, SmallInstances) {
  for (Model m : {Model::kNonConfluent, Model::kConfluent}) {
    const MongeReport r = AuditMonge(I2(), m);
    EXPECT_TRUE(r.pass);
    EXPECT_LE(r.worst_violation, 1e-9);
    EXPECT_GT(r.checks, 0);
    const MongeReport two = AuditMonge(PathNetwork{2, {1, 2}, {1}, {1}, 1.0}, m);
    EXPECT_TRUE(two.pass);
  }
}

TEST(AuditMongeTest, DetectsViolation) {
  // (j - i)^2 negated is convex Monge, not concave.
  std::vector<std::vector<double>> w(6, std::vector<double>(6, 0.0));
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) w[i][j] = -double(j - i) * (j - i);
  }
  const MongeReport r = AuditMonge(w);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.worst_violation, 0.0);
}

TEST(SimulateCompletionTest, MatchesClosedForm) {
  EXPECT_NEAR(SimulateCompletion(I2(), 1, 3.0, 1e-3), 3.0, 1e-2);
  EXPECT_NEAR(SimulateCompletion(I3(), 1, 4.0, 1e-3), 4.0, 1e-2);
  EXPECT_EQ(SimulateCompletion(I2(), 2, 2.0, 1e-3), 0.0);
  EXPECT_EQ(SimulateCompletion(I2(), 2, 1.0, 1e-3), 0.0);
  EXPECT_THROW(SimulateCompletion(I2(), 1, 3.0, 0.0), std::invalid_argument);
}

TEST(SimulateCompletionTest, PartialSupply) {
  std::mt19937_64 rng(84);
  for (int trial = 0; trial < 5; ++trial) {
    const PathNetwork net = testing::RandomNetwork(rng, testing::Uniform(rng, 2, 6));
    NaiveOracle oracle(net);
    for (int s = 0; s < 4; ++s) {
      const double z = testing::UniformReal(rng, oracle.W(1), oracle.Total());
      EXPECT_NEAR(SimulateCompletion(net, 1, z, 1e-3),
                  oracle.Theta(1, Side::kPlus, z), 1e-2);
    }
  }
}

}  // namespace
}  // namespace minsink
