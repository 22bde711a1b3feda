#ifndef MINSINK_KERNELS_H_
#define MINSINK_KERNELS_H_

#include "minsink/pathnet.h"

namespace minsink {

enum class Direction { kRightward, kLeftward };

// Two-piece time function. Rightward: 0 for z <= threshold, else
// (z - threshold) / cap + offset. Leftward: (threshold - z) / cap + offset for
// z < threshold, else 0.
struct ThetaLine {
  double threshold = 0.0;
  double cap = 1.0;
  double offset = 0.0;
  Direction direction = Direction::kRightward;
  int id = 0;

  double Slope() const {
    return direction == Direction::kRightward ? 1.0 / cap : -1.0 / cap;
  }
  double operator()(double z) const {
    if (direction == Direction::kRightward) {
      return z <= threshold ? 0.0 : (z - threshold) / cap + offset;
    }
    return z < threshold ? (threshold - z) / cap + offset : 0.0;
  }
};

// theta^{i,+,j}: supply right of v_i reaching v_i through v_j; i < j.
ThetaLine PlusLine(const PrefixTables& t, int i, int j);
// theta^{i,-,j}: supply left of v_i reaching v_i through v_j; j < i.
ThetaLine MinusLine(const PrefixTables& t, int i, int j);

double ThetaPlusLine(const PrefixTables& t, int i, int j, double z);
double ThetaMinusLine(const PrefixTables& t, int i, int j, double z);
// Capacity replaced by the free parameter c > 0.
double BarThetaPlusLine(const PrefixTables& t, int i, int j, double c,
                        double z);
double BarThetaMinusLine(const PrefixTables& t, int i, int j, double c,
                         double z);

// Time at which all supply on the right of v_i has reached v_i.
double CompletionTimeRight(const PrefixTables& t, int i);
// Time at which all supply on the left of v_i has reached v_i.
double CompletionTimeLeft(const PrefixTables& t, int i);

}  // namespace minsink

#endif  // MINSINK_KERNELS_H_
