#include "minsink/kernels.h"

#include <algorithm>
#include <stdexcept>

namespace minsink {

namespace {

void CheckPair(const PrefixTables& t, int lo, int hi) {
  if (lo < 1 || hi > t.n || lo >= hi) {
    throw std::out_of_range("vertex pair out of range");
  }
}

}  // namespace

ThetaLine PlusLine(const PrefixTables& t, int i, int j) {
  CheckPair(t, i, j);
  return ThetaLine{t.W[j - 1], t.Cap(i, j), t.tau * t.Dist(i, j),
                   Direction::kRightward, j};
}

ThetaLine MinusLine(const PrefixTables& t, int i, int j) {
  CheckPair(t, j, i);
  return ThetaLine{t.W[j], t.Cap(j, i), t.tau * t.Dist(j, i),
                   Direction::kLeftward, j};
}

double ThetaPlusLine(const PrefixTables& t, int i, int j, double z) {
  return PlusLine(t, i, j)(z);
}

double ThetaMinusLine(const PrefixTables& t, int i, int j, double z) {
  return MinusLine(t, i, j)(z);
}

double BarThetaPlusLine(const PrefixTables& t, int i, int j, double c,
                        double z) {
  if (!(c > 0.0)) throw std::invalid_argument("capacity parameter must be > 0");
  ThetaLine line = PlusLine(t, i, j);
  line.cap = c;
  return line(z);
}

double BarThetaMinusLine(const PrefixTables& t, int i, int j, double c,
                         double z) {
  if (!(c > 0.0)) throw std::invalid_argument("capacity parameter must be > 0");
  ThetaLine line = MinusLine(t, i, j);
  line.cap = c;
  return line(z);
}

double CompletionTimeRight(const PrefixTables& t, int i) {
  if (i < 1 || i > t.n) throw std::out_of_range("vertex out of range");
  double best = 0.0;
  for (int j = i + 1; j <= t.n; ++j) {
    best = std::max(best, (t.W[t.n] - t.W[j - 1]) / t.Cap(i, j) +
                              t.tau * t.Dist(i, j));
  }
  return best;
}

double CompletionTimeLeft(const PrefixTables& t, int i) {
  if (i < 1 || i > t.n) throw std::out_of_range("vertex out of range");
  double best = 0.0;
  for (int j = 1; j < i; ++j) {
    best = std::max(best, t.W[j] / t.Cap(j, i) + t.tau * t.Dist(j, i));
  }
  return best;
}

}  // namespace minsink
