#include "minsink/capseg.h"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "serial.h"

namespace minsink {

namespace {

struct Merge {
  double value;
  int32_t prev, leaf;  // adjacent survivors at push time
  bool operator<(const Merge& o) const {
    if (value != o.value) return value < o.value;
    return leaf > o.leaf;  // equal values pop left to right
  }
};

int CeilLog2(int m) {
  int d = 0;
  while ((1 << d) < m) ++d;
  return d;
}

// Runs the merge process of the node. Returns merge times per leaf (m for the
// first leaf, which never merges) and the clamped threshold sequence.
void RunMerges(const PrefixTables& t, int l, int r, std::vector<int>& time,
               std::vector<double>& thresholds, std::vector<int>& prev_at,
               std::vector<int>& next_at, std::vector<int>& order) {
  const int m = r - l;
  time.assign(m, m);
  thresholds.clear();
  prev_at.assign(m, -1);
  next_at.assign(m, -1);
  order.clear();
  if (m < 2) return;
  std::vector<int> prev(m), next(m);
  for (int k = 0; k < m; ++k) {
    prev[k] = k - 1;
    next[k] = k + 1 < m ? k + 1 : -1;
  }
  auto merge_value = [&](int p, int k) {
    const int hp = l + 1 + p, hk = l + 1 + k;
    return (t.W[hk - 1] - t.W[hp - 1]) / (t.tau * (t.Lcum[hk] - t.Lcum[hp]));
  };
  std::vector<Merge> heap_storage;
  heap_storage.reserve(2 * m);
  std::priority_queue<Merge> heap(std::less<Merge>(), std::move(heap_storage));
  for (int k = 1; k < m; ++k) heap.push({merge_value(k - 1, k), k - 1, k});
  std::vector<char> alive(m, 1);
  double last = __builtin_inf();
  int step = 0;
  while (!heap.empty()) {
    const Merge top = heap.top();
    heap.pop();
    if (!alive[top.leaf] || !alive[top.prev] || prev[top.leaf] != top.prev) {
      continue;
    }
    ++step;
    const int k = top.leaf, p = top.prev, nx = next[k];
    last = std::min(last, top.value);
    thresholds.push_back(last);
    time[k] = step;
    prev_at[k] = p;
    next_at[k] = nx;
    order.push_back(k);
    alive[k] = 0;
    next[p] = nx;
    if (nx >= 0) {
      prev[nx] = p;
      heap.push({merge_value(p, nx), p, nx});
    }
  }
}

}  // namespace

std::vector<double> ComputeCapacityThresholds(const PrefixTables& t, int l,
                                              int r) {
  std::vector<int> time, prev_at, next_at, order;
  std::vector<double> thresholds;
  RunMerges(t, l, r, time, thresholds, prev_at, next_at, order);
  return thresholds;
}

CapSeg::CapSeg(const PrefixTables& t, int l, int r) : l_(l), r_(r) {
  const int m = r - l;
  if (m < 1) return;
  std::vector<int> time, prev_at, next_at, order;
  RunMerges(t, l, r, time, thresholds_, prev_at, next_at, order);

  size_ = 1;
  while (size_ < m) size_ <<= 1;
  death_.assign(2 * size_, -1);
  for (int k = 0; k < m; ++k) death_[size_ + k] = time[k];
  for (int x = size_ - 1; x >= 1; --x) {
    death_[x] = std::max(death_[2 * x], death_[2 * x + 1]);
  }

  // Local coordinates relative to W_l keep the sums small.
  auto wl = [&](int x) { return t.W[x] - t.W[l]; };
  auto a = [&](int h) { return t.tau * (t.Lcum[h] - t.Lcum[l]); };
  std::vector<double> v(m, 0.0), u(m, 0.0);
  for (int k = 1; k < m; ++k) {
    const int h = l + 1 + k;
    v[k] = (a(h - 1) - a(h)) * wl(h - 1);
    u[k] = (wl(h - 2) - wl(h - 1)) * wl(h - 1);
  }
  const int depth = CeilLog2(m);
  nodes_.reserve(static_cast<size_t>(2 * m - 1) +
                 static_cast<size_t>(m - 1) * (depth + 1));
  roots_.reserve(m);
  roots_.push_back(BuildBase(0, m, v, u));
  for (int k : order) {
    const int p = prev_at[k], nx = next_at[k];
    int root = roots_.back();
    if (nx >= 0) {
      const int hd = l + 1 + k, hp = l + 1 + p, hn = l + 1 + nx;
      const double dv = (a(hd) - a(hp)) * (wl(hd - 1) - wl(hn - 1));
      const double du = (wl(hp - 1) - wl(hd - 1)) * (wl(hn - 1) - wl(hd - 1));
      root = Update(root, 0, m, k, dv, du);
    }
    roots_.push_back(root);
  }
}

int CapSeg::BuildBase(int lo, int hi, const std::vector<double>& v,
                      const std::vector<double>& u) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({-1, -1, 0.0, 0.0});
  if (hi - lo == 1) {
    nodes_[id].v = v[lo];
    nodes_[id].u = u[lo];
    return id;
  }
  const int mid = (lo + hi) / 2;
  const int left = BuildBase(lo, mid, v, u);
  const int right = BuildBase(mid, hi, v, u);
  nodes_[id] = {left, right, nodes_[left].v + nodes_[right].v,
                nodes_[left].u + nodes_[right].u};
  return id;
}

int CapSeg::Update(int node, int lo, int hi, int leaf, double dv, double du) {
  const int id = static_cast<int>(nodes_.size());
  Node copy = nodes_[node];
  copy.v += dv;
  copy.u += du;
  nodes_.push_back(copy);
  if (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    if (leaf < mid) {
      const int child = Update(copy.left, lo, mid, leaf, dv, du);
      nodes_[id].left = child;
    } else {
      const int child = Update(copy.right, mid, hi, leaf, dv, du);
      nodes_[id].right = child;
    }
  }
  return id;
}

int CapSeg::Regime(double c) const {
  const auto it = std::partition_point(thresholds_.begin(), thresholds_.end(),
                                       [c](double x) { return x >= c; });
  return 1 + static_cast<int>(it - thresholds_.begin());
}

int CapSeg::LastAliveAtOrBefore(int leaf, int rho) const {
  int x = size_ + leaf;
  if (death_[x] >= rho) return leaf;
  while (x > 1) {
    if ((x & 1) && death_[x - 1] >= rho) {
      x = x - 1;
      while (x < size_) x = death_[2 * x + 1] >= rho ? 2 * x + 1 : 2 * x;
      return x - size_;
    }
    x >>= 1;
  }
  return 0;  // leaf 0 never merges
}

void CapSeg::PrefixSums(int rho, int leaf, double& v, double& u) const {
  const int m = NumLines();
  int node = roots_[rho - 1], lo = 0, hi = m;
  v = 0.0;
  u = 0.0;
  while (true) {
    const Node& nd = nodes_[node];
    if (leaf == hi - 1) {
      v += nd.v;
      u += nd.u;
      return;
    }
    const int mid = (lo + hi) / 2;
    if (leaf < mid) {
      node = nd.left;
      hi = mid;
    } else {
      v += nodes_[nd.left].v;
      u += nodes_[nd.left].u;
      node = nd.right;
      lo = mid;
    }
  }
}

int CapSeg::OwnerIn(const PrefixTables& t, int rho, double z) const {
  const auto first = t.W.begin() + l_ + 1, last = t.W.begin() + r_;
  int p = static_cast<int>(std::lower_bound(first, last, z) - t.W.begin());
  // p is the largest active member: W_{p-1} < z <= W_p, capped at r.
  return l_ + 1 + LastAliveAtOrBefore(p - l_ - 1, rho);
}

int CapSeg::OwnerRightOf(const PrefixTables& t, int rho, double z) const {
  const auto first = t.W.begin() + l_ + 1, last = t.W.begin() + r_;
  int p = static_cast<int>(std::upper_bound(first, last, z) - t.W.begin());
  return l_ + 1 + LastAliveAtOrBefore(p - l_ - 1, rho);
}

double CapSeg::IntegralIn(const PrefixTables& t, int rho, double c,
                          double z) const {
  const double base = t.W[l_];
  if (z <= base) return 0.0;
  const int h = OwnerIn(t, rho, z);
  double v, u;
  PrefixSums(rho, h - l_ - 1, v, u);
  const double zl = z - base;
  const double a = t.tau * (t.Lcum[h] - t.Lcum[l_]);
  const double wo = t.W[h - 1] - base;
  return v + zl * a + (0.5 * zl * zl - u - zl * wo) / c;
}

int CapSeg::Owner(const PrefixTables& t, double c, double z) const {
  if (!(c > 0.0)) throw std::invalid_argument("capacity parameter must be > 0");
  if (NumLines() < 1 || z <= t.W[l_]) return -1;
  return OwnerIn(t, Regime(c), z);
}

double CapSeg::Value(const PrefixTables& t, double c, double z) const {
  const int h = Owner(t, c, z);
  return h < 0 ? 0.0 : LineValue(t, h, c, z);
}

double CapSeg::Integral(const PrefixTables& t, double c, double z) const {
  if (!(c > 0.0)) throw std::invalid_argument("capacity parameter must be > 0");
  if (NumLines() < 1) return 0.0;
  return IntegralIn(t, Regime(c), c, z);
}

size_t CapSeg::MemoryBytes() const {
  return sizeof(CapSeg) + thresholds_.capacity() * sizeof(double) +
         death_.capacity() * sizeof(int32_t) + nodes_.capacity() * sizeof(Node) +
         roots_.capacity() * sizeof(int32_t);
}

void CapSeg::Serialize(std::vector<char>& out) const {
  serial::Put<int32_t>(out, l_);
  serial::Put<int32_t>(out, r_);
  serial::Put<int32_t>(out, size_);
  serial::PutVec(out, thresholds_);
  serial::PutVec(out, death_);
  serial::PutVec(out, nodes_);
  serial::PutVec(out, roots_);
}

CapSeg CapSeg::Deserialize(const char*& in) {
  CapSeg s;
  s.l_ = serial::Get<int32_t>(in);
  s.r_ = serial::Get<int32_t>(in);
  s.size_ = serial::Get<int32_t>(in);
  s.thresholds_ = serial::GetVec<double>(in);
  s.death_ = serial::GetVec<int32_t>(in);
  s.nodes_ = serial::GetVec<Node>(in);
  s.roots_ = serial::GetVec<int32_t>(in);
  return s;
}

}  // namespace minsink
