#ifndef MINSINK_NUMERIC_H_
#define MINSINK_NUMERIC_H_

#include <algorithm>
#include <cmath>

namespace minsink {

inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;
// Structural decisions (owner ties, crossing detection) use a tighter band so
// that they never disagree with value comparisons made at kRelTol.
inline constexpr double kTieTol = 1e-12;

inline bool NearlyEqual(double a, double b, double rel = kRelTol,
                        double abs_floor = kAbsTol) {
  if (a == b) return true;
  return std::fabs(a - b) <=
         std::max(abs_floor, rel * std::max(std::fabs(a), std::fabs(b)));
}

// -1, 0 or +1 for a - b, treating differences inside the tie band as 0.
inline int TieSign(double a, double b) {
  const double d = a - b;
  const double band =
      kTieTol * std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
  if (d > band) return 1;
  if (d < -band) return -1;
  return 0;
}

}  // namespace minsink

#endif  // MINSINK_NUMERIC_H_
