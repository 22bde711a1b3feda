#include "minsink/envelope.h"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "minsink/oracle.h"
#include "test_util.h"

namespace minsink {
namespace {

using testing::I2;

PiecewiseLinearFn AsFn(const ThetaLine& line, double total) {
  PiecewiseLinearFn f;
  const double thr = line.threshold;
  if (line.direction == Direction::kRightward) {
    f.SetOrigin(0.0, 0.0);
    f.AddPiece(thr, 0.0, 0.0, 0.0);
    f.AddPiece(total, line.offset, 1.0 / line.cap, line(total));
  } else {
    f.SetOrigin(0.0, line(0.0));
    f.AddPiece(thr, line(0.0), -1.0 / line.cap, 0.0);
    f.AddPiece(total, 0.0, 0.0, 0.0);
  }
  return f;
}

std::vector<ThetaLine> RandomLines(std::mt19937_64& rng, int count,
                                   double total, Direction dir) {
  std::vector<ThetaLine> lines;
  for (int k = 0; k < count; ++k) {
    ThetaLine line;
    line.threshold = dir == Direction::kRightward
                         ? testing::Uniform(rng, 0, static_cast<int>(total) - 1)
                         : testing::Uniform(rng, 1, static_cast<int>(total));
    line.cap = testing::Uniform(rng, 1, 8);
    line.offset = testing::Uniform(rng, 0, 8);
    line.direction = dir;
    line.id = k + 1;
    lines.push_back(line);
  }
  return lines;
}

TEST(EnvelopeTest, SingleLine) {
  const PrefixTables t = BuildTables(I2());
  const Envelope env = BuildUpperEnvelope({PlusLine(t, 2, 3)}, t.Total());
  EXPECT_EQ(env.Breakpoints(), (std::vector<double>{0, 2, 3}));
  EXPECT_EQ(env.Owners().back(), 3);
  EXPECT_EQ(env.Value(2), 0.0);
  EXPECT_DOUBLE_EQ(env.Value(3), 2.0);
  EXPECT_EQ(env.Owner(2.5), 3);
  EXPECT_DOUBLE_EQ(env.Value(2.5), 1.5);
  EXPECT_DOUBLE_EQ(env.PrefixIntegral(3), 1.5);
  EXPECT_DOUBLE_EQ(env.PrefixIntegral(2.5), 0.625);
  EXPECT_EQ(env.PrefixIntegral(0), 0.0);
  EXPECT_THROW(env.Value(3.5), std::out_of_range);
}

TEST(EnvelopeTest, IdenticalLinesPreferSmallerId) {
  ThetaLine a{1.0, 2.0, 1.0, Direction::kRightward, 7};
  ThetaLine b = a;
  b.id = 4;
  const Envelope env = BuildUpperEnvelope({a, b}, 5.0);
  EXPECT_EQ(env.Owner(3.0), 4);
  EXPECT_DOUBLE_EQ(env.Value(3.0), a(3.0));
}

TEST(EnvelopeTest, TwoLinesOfOneFamily) {
  const PrefixTables t = BuildTables(I2());
  const Envelope env =
      BuildUpperEnvelope({PlusLine(t, 1, 2), PlusLine(t, 1, 3)}, t.Total());
  EXPECT_DOUBLE_EQ(env.Value(3), 3.0);
  EXPECT_DOUBLE_EQ(env.Value(1.5), 1.5);
}

TEST(EnvelopeTest, BreakpointBelongsToLeftPiece) {
  ThetaLine a{1.0, 1.0, 0.0, Direction::kRightward, 1};
  ThetaLine b{3.0, 1.0, 5.0, Direction::kRightward, 2};
  const Envelope env = BuildUpperEnvelope({a, b}, 6.0);
  EXPECT_EQ(env.Owner(3.0), 1);
  EXPECT_EQ(env.Owner(3.5), 2);
}

TEST(EnvelopeTest, RejectsBadInput) {
  EXPECT_THROW(BuildUpperEnvelope({}, 1.0), std::invalid_argument);
  ThetaLine a{1.0, 1.0, 0.0, Direction::kRightward, 1};
  ThetaLine b{1.0, 1.0, 0.0, Direction::kLeftward, 2};
  EXPECT_THROW(BuildUpperEnvelope({a, b}, 3.0), std::invalid_argument);
}

TEST(EnvelopeTest, RandomLineSetsMatchPointwiseMax) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const double total = testing::Uniform(rng, 2, 40);
    const Direction dir =
        trial % 2 == 0 ? Direction::kRightward : Direction::kLeftward;
    const auto lines =
        RandomLines(rng, testing::Uniform(rng, 1, 64), total, dir);
    const Envelope env = BuildUpperEnvelope(lines, total);
    ASSERT_LE(env.NumPieces(), 2 * static_cast<int>(lines.size()) + 1);
    PiecewiseLinearFn max_fn = PiecewiseLinearFn::Constant(0.0, total, 0.0);
    for (const ThetaLine& line : lines) {
      max_fn = PiecewiseLinearFn::Max(max_fn, AsFn(line, total));
    }
    for (int s = 0; s < 100; ++s) {
      const double z = s % 4 == 0 ? testing::Uniform(rng, 0, static_cast<int>(total))
                                  : testing::UniformReal(rng, 0.0, total);
      double best = 0.0;
      for (const ThetaLine& line : lines) best = std::max(best, line(z));
      ASSERT_NEAR(env.Value(z), best, 1e-12) << "trial " << trial << " z " << z;
      const int owner = env.Owner(z);
      if (best > 0.0) {
        ASSERT_NEAR(lines[owner - 1](z), best, 1e-12);
      }
      ASSERT_NEAR(env.PrefixIntegral(z), max_fn.Integral(0.0, z),
                  1e-9 * std::max(1.0, max_fn.Integral(0.0, z)));
    }
  }
}

TEST(EnvelopeTest, PrefixIntegralsAreTrapezoidSums) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const double total = 30.0;
    const auto lines = RandomLines(rng, testing::Uniform(rng, 1, 20), total,
                                   trial % 2 ? Direction::kLeftward
                                             : Direction::kRightward);
    const Envelope env = BuildUpperEnvelope(lines, total);
    const std::vector<double> bp = env.Breakpoints();
    const std::vector<double> integ = env.BreakpointIntegrals();
    ASSERT_EQ(bp.size(), integ.size());
    EXPECT_EQ(integ.front(), 0.0);
    double sum = 0.0;
    for (size_t p = 0; p + 1 < bp.size(); ++p) {
      ASSERT_LT(bp[p], bp[p + 1]);
      const double mid = 0.5 * (bp[p] + bp[p + 1]);
      sum += (bp[p + 1] - bp[p]) * env.Value(mid);
      ASSERT_NEAR(integ[p + 1], sum, 1e-9 * std::max(1.0, sum));
      ASSERT_GE(integ[p + 1], integ[p]);
    }
  }
}

TEST(EnvelopeTest, PlusFamilySlopesAreNonDecreasing) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const PathNetwork net = testing::RandomNetwork(rng, testing::Uniform(rng, 2, 30));
    const PrefixTables t = BuildTables(net);
    for (int i = 1; i < net.n; ++i) {
      std::vector<ThetaLine> lines;
      for (int j = i + 1; j <= net.n; ++j) lines.push_back(PlusLine(t, i, j));
      const Envelope env = BuildUpperEnvelope(lines, t.Total());
      for (int p = 0; p + 1 < env.NumPieces(); ++p) {
        const double a = env.PieceIsZero(p) ? 0.0 : env.PieceSlope(p);
        const double b = env.PieceIsZero(p + 1) ? 0.0 : env.PieceSlope(p + 1);
        ASSERT_LE(a, b + 1e-15);
      }
    }
  }
}

TEST(EnvelopeTest, SerializationRoundTrip) {
  std::mt19937_64 rng(34);
  const auto lines = RandomLines(rng, 12, 25.0, Direction::kLeftward);
  const Envelope env = BuildUpperEnvelope(lines, 25.0);
  std::vector<char> buf;
  env.Serialize(buf);
  const char* in = buf.data();
  const Envelope back = Envelope::Deserialize(in);
  EXPECT_EQ(in, buf.data() + buf.size());
  for (double z = 0.0; z <= 25.0; z += 0.37) {
    EXPECT_EQ(back.Value(z), env.Value(z));
    EXPECT_EQ(back.PrefixIntegral(z), env.PrefixIntegral(z));
  }
}

}  // namespace
}  // namespace minsink
