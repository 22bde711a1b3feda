#include "minsink/optquery.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "minsink/oracle.h"
#include "test_util.h"

namespace minsink {
namespace {

using testing::I2;
using testing::RelNear;

constexpr double kTol = 1e-9;

TEST(OptQueryTest, WorkedPairs) {
  const CueTree tree(I2());
  const IntervalPair sides = Phase2Intervals(tree, 1, 3);
  for (double z : {1.25, 1.5, 2.0}) {
    EXPECT_DOUBLE_EQ(sides.plus.Value(tree, z), z);
  }
  EXPECT_DOUBLE_EQ(PseudoIntersection(tree, 1, 3, sides.plus, sides.minus), 1.5);
  const OptResult nc = OptQuery(tree, 1, 3, Model::kNonConfluent);
  EXPECT_DOUBLE_EQ(nc.z_star, 1.5);
  EXPECT_DOUBLE_EQ(nc.value, 1.25);
  const OptResult cf = OptQuery(tree, 1, 3, Model::kConfluent);
  EXPECT_DOUBLE_EQ(cf.z_star, 1.0);
  EXPECT_DOUBLE_EQ(cf.value, 1.5);
  const OptResult adj = OptQuery(tree, 1, 2, Model::kNonConfluent);
  EXPECT_DOUBLE_EQ(adj.z_star, 1.0);
  EXPECT_EQ(adj.value, 0.0);
  EXPECT_THROW(OptQuery(tree, 2, 2, Model::kNonConfluent), std::out_of_range);
}

TEST(OptQueryTest, PhaseFourSplitsTheIntegral) {
  const CueTree tree(I2());
  const IntervalPair sides = Phase2Intervals(tree, 1, 3);
  EXPECT_DOUBLE_EQ(sides.plus.Integral(tree, 1.5), 0.625);
  const OptResult r = Phase4Integral(tree, 1, 3, sides.plus, sides.minus, 1.5,
                                     Model::kNonConfluent);
  EXPECT_DOUBLE_EQ(r.value, 1.25);
}

TEST(LinkWeightsTest, BoundaryLinks) {
  const CueTree tree(I2());
  for (Model m : {Model::kNonConfluent, Model::kConfluent}) {
    LinkWeights w(tree, m);
    EXPECT_EQ(w.Weight(0, 1), 0.0);
    EXPECT_EQ(w.Weight(3, 4), 0.0);
    EXPECT_TRUE(std::isinf(w.Weight(0, 4)));
    EXPECT_TRUE(w.Evaluate(0, 4).infinite);
    EXPECT_DOUBLE_EQ(w.Weight(0, 2), 1.5);
    EXPECT_DOUBLE_EQ(w.Weight(2, 4), 1.5);
    EXPECT_THROW(w.Weight(2, 2), std::out_of_range);
    EXPECT_THROW(w.Weight(0, 5), std::out_of_range);
  }
}

TEST(OptQueryTest, SidesMatchNaiveTheta) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    const PathNetwork net = testing::RandomNetwork(rng, testing::Uniform(rng, 2, 64));
    const CueTree tree(net);
    const NaiveOracle oracle(net);
    const double total = oracle.Total();
    const int i = testing::Uniform(rng, 1, net.n - 1);
    const int j = testing::Uniform(rng, i + 1, net.n);
    const IntervalPair sides = Phase2Intervals(tree, i, j);
    for (int s = 0; s < 100; ++s) {
      const double z = testing::UniformReal(rng, oracle.W(i), oracle.W(j - 1));
      ASSERT_TRUE(RelNear(sides.plus.Value(tree, z),
                          oracle.Theta(i, Side::kPlus, z), kTol));
      ASSERT_TRUE(RelNear(sides.minus.Value(tree, total - z),
                          oracle.Theta(j, Side::kMinus, z), kTol));
    }
  }
}

TEST(OptQueryTest, MirrorImage) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 30; ++trial) {
    const PathNetwork net = testing::RandomNetwork(rng, testing::Uniform(rng, 3, 30));
    const CueTree tree(net), mirror(Mirror(net));
    const double total = tree.fwd().Total();
    const int n = net.n;
    for (int i = 1; i < n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        const OptResult a = OptQuery(tree, i, j, Model::kNonConfluent);
        const OptResult b = OptQuery(mirror, n + 1 - j, n + 1 - i,
                                     Model::kNonConfluent);
        ASSERT_TRUE(RelNear(a.value, b.value, kTol));
        ASSERT_TRUE(RelNear(a.z_star, total - b.z_star, kTol))
            << "pair " << i << "," << j;
      }
    }
  }
}

TEST(OptQueryTest, LinkWeightsMatchOracle) {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 24; ++trial) {
    const int n = trial < 4 ? testing::Uniform(rng, 1, 4) : testing::Uniform(rng, 5, 64);
    const PathNetwork net = testing::RandomNetwork(rng, n, trial % 4 == 0);
    const CueTree tree(net);
    NaiveOracle oracle(net);
    for (Model m : {Model::kNonConfluent, Model::kConfluent}) {
      LinkWeights w(tree, m);
      for (int i = 0; i <= n; ++i) {
        for (int j = i + 1; j <= n + 1; ++j) {
          ASSERT_TRUE(RelNear(w.Weight(i, j), oracle.LinkWeight(i, j, m), kTol))
              << ModelName(m) << " (" << i << "," << j << ") trial " << trial;
          if (i >= 1 && j <= n) {
            const OptResult r = w.Evaluate(i, j);
            ASSERT_GE(r.z_star, oracle.W(i));
            ASSERT_LE(r.z_star, oracle.W(j - 1));
          }
        }
      }
    }
  }
}

TEST(OptQueryTest, UniformPathEqualsGeneralPath) {
  std::mt19937_64 rng(64);
  CueTreeOptions forced;
  forced.force_capacity_structures = true;
  for (int trial = 0; trial < 10; ++trial) {
    const PathNetwork net = testing::RandomNetwork(rng, testing::Uniform(rng, 2, 128), true);
    const CueTree tree(net, forced);
    for (Model m : {Model::kNonConfluent, Model::kConfluent}) {
      LinkWeights general(tree, m, QueryPath::kGeneral);
      LinkWeights uniform(tree, m, QueryPath::kUniform);
      for (int i = 0; i <= net.n; ++i) {
        for (int j = i + 1; j <= net.n + 1; ++j) {
          ASSERT_TRUE(RelNear(general.Weight(i, j), uniform.Weight(i, j), kTol));
        }
      }
    }
  }
  const CueTree i2(I2());
  EXPECT_DOUBLE_EQ(OptQueryUniform(i2, 1, 3, Model::kNonConfluent).value, 1.25);
  EXPECT_DOUBLE_EQ(OptQueryUniform(i2, 1, 3, Model::kConfluent).value, 1.5);
  const CueTree general(testing::I3());
  EXPECT_THROW(OptQueryUniform(general, 1, 3, Model::kNonConfluent),
               std::invalid_argument);
  EXPECT_THROW(LinkWeights(i2, Model::kConfluent, QueryPath::kGeneral),
               std::invalid_argument);
}

// theta^{i,+} >= theta^{i+1,+} and theta^{i,-} <= theta^{i+1,-}.
TEST(StructureTest, ThetaMonotoneInOrigin) {
  std::mt19937_64 rng(65);
  for (int trial = 0; trial < 30; ++trial) {
    const PathNetwork net = testing::RandomNetwork(rng, testing::Uniform(rng, 2, 40));
    const NaiveOracle oracle(net);
    for (int s = 0; s < 100; ++s) {
      const double z = testing::UniformReal(rng, 0.0, oracle.Total());
      for (int i = 1; i < net.n; ++i) {
        ASSERT_GE(oracle.Theta(i, Side::kPlus, z),
                  oracle.Theta(i + 1, Side::kPlus, z) - kTol);
        ASSERT_LE(oracle.Theta(i, Side::kMinus, z),
                  oracle.Theta(i + 1, Side::kMinus, z) + kTol);
      }
    }
  }
}

TEST(StructureTest, CrossingPointsAreOrdered) {
  std::mt19937_64 rng(66);
  for (int trial = 0; trial < 30; ++trial) {
    const PathNetwork net = testing::RandomNetwork(rng, testing::Uniform(rng, 3, 24));
    const CueTree tree(net);
    LinkWeights w(tree, Model::kNonConfluent);
    const int n = net.n;
    auto alpha = [&](int i, int j) { return w.Evaluate(i, j).z_star; };
    for (int i = 1; i + 1 < n; ++i) {
      for (int j = i + 2; j < n; ++j) {
        const double a = alpha(i, j), b = alpha(i + 1, j);
        const double c = alpha(i, j + 1), d = alpha(i + 1, j + 1);
        ASSERT_LE(a, b + kTol);
        ASSERT_LE(b, d + kTol);
        ASSERT_LE(a, c + kTol);
        ASSERT_LE(c, d + kTol);
      }
    }
  }
}

TEST(StructureTest, PhiIsConvex) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    const PathNetwork net = testing::RandomNetwork(rng, testing::Uniform(rng, 3, 32));
    NaiveOracle oracle(net);
    for (int i = 1; i < net.n; ++i) {
      for (int j = i + 1; j <= net.n; ++j) {
        const double lo = oracle.W(i), hi = oracle.W(j - 1);
        if (hi <= lo) continue;
        const int steps = 40;
        const double h = (hi - lo) / steps;
        for (int s = 1; s < steps; ++s) {
          const double z = lo + s * h;
          const double second = oracle.Phi(i, j, z - h) - 2 * oracle.Phi(i, j, z) +
                                oracle.Phi(i, j, z + h);
          ASSERT_GE(second, -kTol * std::max(1.0, oracle.Phi(i, j, z)));
        }
      }
    }
  }
}

TEST(StructureTest, PseudoIntersectionSeparatesSides) {
  std::mt19937_64 rng(68);
  const double delta = 1e-6;
  for (int trial = 0; trial < 30; ++trial) {
    const PathNetwork net = testing::RandomNetwork(rng, testing::Uniform(rng, 3, 32));
    const CueTree tree(net);
    NaiveOracle oracle(net);
    for (int i = 1; i < net.n; ++i) {
      for (int j = i + 2; j <= net.n; ++j) {
        const double z = OptQuery(tree, i, j, Model::kNonConfluent).z_star;
        const double lo = oracle.W(i), hi = oracle.W(j - 1);
        if (z - delta > lo) {
          ASSERT_LE(oracle.Theta(i, Side::kPlus, z - delta),
                    oracle.Theta(j, Side::kMinus, z - delta) + kTol);
        }
        if (z + delta < hi) {
          ASSERT_GE(oracle.Theta(i, Side::kPlus, z + delta),
                    oracle.Theta(j, Side::kMinus, z + delta) - kTol);
        }
      }
    }
  }
}

// The crossing lies just right of a capped-piece boundary of the minus side.
TEST(OptQueryTest, CrossingNextToPieceBoundary) {
  PathNetwork net;
  net.n = 29;
  net.tau = 2;
  net.weights = {8, 4, 3, 6, 2, 7, 6, 3, 5, 3, 6, 4, 3, 6, 5,
                 6, 3, 2, 8, 5, 8, 7, 1, 4, 2, 2, 5, 1, 2};
  net.lengths = {3, 3, 1, 8, 4, 2, 7, 8, 8, 8, 3, 7, 2, 2,
                 5, 7, 1, 5, 1, 1, 4, 7, 5, 3, 2, 3, 3, 1};
  net.capacities = {5, 5, 5, 7, 3, 2, 7, 6, 8, 7, 8, 6, 2, 7,
                    1, 2, 6, 2, 8, 1, 4, 3, 4, 6, 7, 5, 6, 6};
  const CueTree tree(net);
  NaiveOracle oracle(net);
  const OptResult fast = OptQuery(tree, 13, 28, Model::kNonConfluent);
  const OptResult slow = oracle.Opt(13, 28, Model::kNonConfluent);
  EXPECT_DOUBLE_EQ(fast.z_star, 94.75);
  EXPECT_TRUE(RelNear(fast.value, slow.value, 1e-12));
}

}  // namespace
}  // namespace minsink
