#include "minsink/pathnet.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace minsink {

namespace {

bool AllPositive(const std::vector<double>& v) {
  for (double x : v) {
    if (!(x > 0.0) || !std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

void PathNetwork::Validate() const {
  if (n < 1) throw std::invalid_argument("network needs at least one vertex");
  if (static_cast<int>(weights.size()) != n) {
    throw std::invalid_argument("expected " + std::to_string(n) + " weights");
  }
  if (static_cast<int>(lengths.size()) != n - 1 ||
      static_cast<int>(capacities.size()) != n - 1) {
    throw std::invalid_argument("lengths and capacities need n-1 entries");
  }
  if (!AllPositive(weights)) throw std::invalid_argument("weights must be > 0");
  if (!AllPositive(lengths)) throw std::invalid_argument("lengths must be > 0");
  if (!AllPositive(capacities)) {
    throw std::invalid_argument("capacities must be > 0");
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("tau must be > 0");
  }
}

bool PathNetwork::HasUniformCapacity() const {
  for (double c : capacities) {
    if (c != capacities.front()) return false;
  }
  return true;
}

PathNetwork Mirror(const PathNetwork& net) {
  PathNetwork m;
  m.n = net.n;
  m.tau = net.tau;
  m.weights.assign(net.weights.rbegin(), net.weights.rend());
  m.lengths.assign(net.lengths.rbegin(), net.lengths.rend());
  m.capacities.assign(net.capacities.rbegin(), net.capacities.rend());
  return m;
}

MinCapacityTable::MinCapacityTable(const std::vector<double>& capacities) {
  const int m = static_cast<int>(capacities.size());
  if (m == 0) return;
  const int levels = Log2(m) + 1;
  table_.resize(levels);
  table_[0] = capacities;
  for (int k = 1; k < levels; ++k) {
    const int len = m - (1 << k) + 1;
    table_[k].resize(len);
    const auto& prev = table_[k - 1];
    for (int a = 0; a < len; ++a) {
      const double x = prev[a], y = prev[a + (1 << (k - 1))];
      table_[k][a] = x < y ? x : y;
    }
  }
}

int MinCapacityTable::FirstBelow(int i, int j_max, double bound) const {
  if (j_max <= i || Query(i, j_max) >= bound) return j_max + 1;
  int lo = i + 1, hi = j_max;  // Query(i, hi) < bound
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (Query(i, mid) < bound) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

size_t MinCapacityTable::MemoryBytes() const {
  size_t total = 0;
  for (const auto& row : table_) total += row.capacity() * sizeof(double);
  return total;
}

PrefixTables BuildTables(const PathNetwork& net) {
  net.Validate();
  PrefixTables t;
  t.n = net.n;
  t.tau = net.tau;
  t.W.assign(net.n + 1, 0.0);
  t.Lcum.assign(net.n + 1, 0.0);
  for (int i = 1; i <= net.n; ++i) t.W[i] = t.W[i - 1] + net.weights[i - 1];
  for (int i = 2; i <= net.n; ++i) {
    t.Lcum[i] = t.Lcum[i - 1] + net.lengths[i - 2];
  }
  t.rmq = MinCapacityTable(net.capacities);
  t.uniform = net.HasUniformCapacity();
  return t;
}

double MinCapacity(const PrefixTables& tables, int i, int j) {
  if (i < 1 || j > tables.n || i >= j) {
    throw std::out_of_range("MinCapacity needs 1 <= i < j <= n");
  }
  return tables.Cap(i, j);
}

}  // namespace minsink
