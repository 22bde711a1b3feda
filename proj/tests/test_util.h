#ifndef MINSINK_TESTS_TEST_UTIL_H_
#define MINSINK_TESTS_TEST_UTIL_H_

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "minsink/pathnet.h"

namespace minsink::testing {

// n = 3, unit weights, lengths and capacities.
inline PathNetwork I2() { return PathNetwork{3, {1, 1, 1}, {1, 1}, {1, 1}, 1.0}; }
inline PathNetwork I3() { return PathNetwork{3, {2, 1, 1}, {1, 2}, {2, 1}, 1.0}; }

inline int Uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double UniformReal(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Integer data in [1, hi], tau included.
inline PathNetwork RandomNetwork(std::mt19937_64& rng, int n,
                                 bool uniform = false, int hi = 8) {
  PathNetwork net;
  net.n = n;
  net.tau = Uniform(rng, 1, hi);
  const double c = Uniform(rng, 1, hi);
  for (int i = 0; i < n; ++i) net.weights.push_back(Uniform(rng, 1, hi));
  for (int i = 0; i + 1 < n; ++i) {
    net.lengths.push_back(Uniform(rng, 1, hi));
    net.capacities.push_back(uniform ? c : Uniform(rng, 1, hi));
  }
  return net;
}

inline ::testing::AssertionResult RelNear(double a, double b, double rel) {
  if (std::isinf(a) || std::isinf(b)) {
    if (a == b) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << a << " vs " << b;
  }
  const double scale = std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
  if (std::fabs(a - b) <= rel * scale) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure()
         << a << " vs " << b << " (diff " << a - b << ")";
}

}  // namespace minsink::testing

#endif  // MINSINK_TESTS_TEST_UTIL_H_
