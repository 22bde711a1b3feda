#ifndef MINSINK_CAPSEG_H_
#define MINSINK_CAPSEG_H_

#include <cstdint>
#include <vector>

#include "minsink/pathnet.h"

namespace minsink {

// Capacity-parameterized envelope of the family
//   f_h(c, z) = (z - W_{h-1}) / c + tau * L_{l,h},  h in [l+1..r]
// (0 for z <= W_{h-1}) for every c > 0. All members share slope 1/c, so the
// owner at z is the best-offset member among the active ones. As c falls,
// members drop out by merging into their left neighbour; thresholds[k-1] is
// the capacity at which the k-th merge happens. Regime rho (1..m) collects
// c in (thresholds[rho-1], thresholds[rho-2]].
//
// Owners come from a max tree over merge times. Prefix integrals come from a
// persistent sum tree with one version per regime, built by path copying.
class CapSeg {
 public:
  CapSeg() = default;
  CapSeg(const PrefixTables& t, int l, int r);

  int l() const { return l_; }
  int r() const { return r_; }
  int NumLines() const { return r_ - l_; }
  const std::vector<double>& thresholds() const { return thresholds_; }
  int NumVersions() const { return static_cast<int>(roots_.size()); }
  int64_t NumTreeNodes() const { return static_cast<int64_t>(nodes_.size()); }

  int Regime(double c) const;
  // Owner vertex h at z (z > W_l) in regime rho; z beyond W_r keeps the last
  // surviving member.
  int OwnerIn(const PrefixTables& t, int rho, double z) const;
  // Same with right-limit semantics at z.
  int OwnerRightOf(const PrefixTables& t, int rho, double z) const;
  double LineValue(const PrefixTables& t, int h, double c, double z) const {
    return (z - t.W[h - 1]) / c + t.tau * (t.Lcum[h] - t.Lcum[l_]);
  }
  // Integral over [0, z] of the envelope at capacity c (regime rho).
  double IntegralIn(const PrefixTables& t, int rho, double c, double z) const;

  // Checked entry points; return 0 (owner -1) when z <= W_l.
  int Owner(const PrefixTables& t, double c, double z) const;
  double Value(const PrefixTables& t, double c, double z) const;
  double Integral(const PrefixTables& t, double c, double z) const;

  size_t MemoryBytes() const;
  void Serialize(std::vector<char>& out) const;
  static CapSeg Deserialize(const char*& in);

 private:
  struct Node {
    int32_t left, right;
    double v, u;
  };

  int LastAliveAtOrBefore(int leaf, int rho) const;
  void PrefixSums(int rho, int leaf, double& v, double& u) const;
  int BuildBase(int lo, int hi, const std::vector<double>& v,
                const std::vector<double>& u);
  int Update(int node, int lo, int hi, int leaf, double dv, double du);

  int l_ = 0, r_ = 0;
  std::vector<double> thresholds_;
  int size_ = 0;                // leaves of the max tree (power of two)
  std::vector<int32_t> death_;  // max tree of merge times, m when never
  std::vector<Node> nodes_;
  std::vector<int32_t> roots_;  // roots_[rho - 1]
};

// Merge capacities of the node spanning [l..r]; empty when r - l < 2.
std::vector<double> ComputeCapacityThresholds(const PrefixTables& t, int l,
                                              int r);

}  // namespace minsink

#endif  // MINSINK_CAPSEG_H_
