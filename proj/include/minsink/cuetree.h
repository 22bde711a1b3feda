#ifndef MINSINK_CUETREE_H_
#define MINSINK_CUETREE_H_

#include <string>
#include <vector>

#include "minsink/capseg.h"
#include "minsink/envelope.h"
#include "minsink/pathnet.h"

namespace minsink {

// Payload of one direction at a node. Built on an oriented view: the original
// network for the plus side, the mirrored network for the minus side. In the
// oriented view the node spans [origin..end] and stores the family
// theta^{origin,+,h}, h in [origin+1..end].
struct DirPayload {
  int origin = 0;
  int end = 0;
  Envelope env;  // free-capacity envelope with prefix integrals
  CapSeg cap;    // capacity-parameterized envelope; empty if not built
  bool has_cap = false;
};

struct CueNode {
  int l = 0, r = 0;  // spanned vertices
  int left = -1, right = -1;
  DirPayload plus, minus;

  int Edges() const { return r - l; }
  bool IsLeaf() const { return l == r; }
};

struct CueTreeOptions {
  // Capacity structures are skipped on uniform networks unless forced.
  bool force_capacity_structures = false;
};

class CueTree {
 public:
  CueTree() = default;
  CueTree(const PathNetwork& net, const CueTreeOptions& options = {});

  int n() const { return fwd_.n; }
  const PathNetwork& network() const { return net_; }
  const PrefixTables& fwd() const { return fwd_; }
  const PrefixTables& rev() const { return rev_; }
  const PrefixTables& view(bool minus) const { return minus ? rev_ : fwd_; }
  bool uniform() const { return fwd_.uniform; }
  bool has_capacity_structures() const { return has_cap_; }
  int root() const { return 0; }
  const CueNode& node(int id) const { return nodes_[id]; }
  int NumNodes() const { return static_cast<int>(nodes_.size()); }
  int Height() const { return height_; }

  // Maximal nodes covering [i..j], left to right; empty when i > j.
  std::vector<int> MaximalSubpathNodes(int i, int j) const;
  void AppendMaximalSubpathNodes(int i, int j, std::vector<int>& out) const;

  size_t MemoryBytes() const;

  void Save(const std::string& path) const;
  // The network must be the one the cache was built from.
  static CueTree Load(const PathNetwork& net, const std::string& path);

 private:
  int BuildNode(int l, int r, int depth);
  void Cover(int id, int i, int j, std::vector<int>& out) const;
  void FillPayload(CueNode& node);

  PathNetwork net_;
  PrefixTables fwd_, rev_;
  std::vector<CueNode> nodes_;
  bool has_cap_ = false;
  int height_ = 0;
};

}  // namespace minsink

#endif  // MINSINK_CUETREE_H_
