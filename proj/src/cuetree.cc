#include "minsink/cuetree.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "minsink/kernels.h"
#include "serial.h"

namespace minsink {

namespace {

constexpr char kMagic[8] = {'M', 'S', 'N', 'K', 'C', 'U', 'E', '1'};
constexpr uint32_t kFormatVersion = 1;

DirPayload MakePayload(const PrefixTables& t, int origin, int end,
                       bool with_cap) {
  DirPayload p;
  p.origin = origin;
  p.end = end;
  if (end <= origin) return p;
  std::vector<ThetaLine> lines;
  lines.reserve(end - origin);
  for (int h = origin + 1; h <= end; ++h) lines.push_back(PlusLine(t, origin, h));
  p.env = BuildUpperEnvelope(lines, t.Total());
  if (with_cap) {
    p.cap = CapSeg(t, origin, end);
    p.has_cap = true;
  }
  return p;
}

uint64_t Fingerprint(const PathNetwork& net) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* data, size_t bytes) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t k = 0; k < bytes; ++k) {
      h ^= p[k];
      h *= 1099511628211ull;
    }
  };
  mix(&net.n, sizeof(net.n));
  mix(&net.tau, sizeof(net.tau));
  mix(net.weights.data(), net.weights.size() * sizeof(double));
  mix(net.lengths.data(), net.lengths.size() * sizeof(double));
  mix(net.capacities.data(), net.capacities.size() * sizeof(double));
  return h;
}

void PutPayload(std::vector<char>& out, const DirPayload& p) {
  serial::Put<int32_t>(out, p.origin);
  serial::Put<int32_t>(out, p.end);
  serial::Put<uint8_t>(out, p.has_cap ? 1 : 0);
  if (p.end > p.origin) {
    p.env.Serialize(out);
    if (p.has_cap) p.cap.Serialize(out);
  }
}

DirPayload GetPayload(const char*& in) {
  DirPayload p;
  p.origin = serial::Get<int32_t>(in);
  p.end = serial::Get<int32_t>(in);
  p.has_cap = serial::Get<uint8_t>(in) != 0;
  if (p.end > p.origin) {
    p.env = Envelope::Deserialize(in);
    if (p.has_cap) p.cap = CapSeg::Deserialize(in);
  }
  return p;
}

}  // namespace

CueTree::CueTree(const PathNetwork& net, const CueTreeOptions& options)
    : net_(net) {
  fwd_ = BuildTables(net);
  rev_ = BuildTables(Mirror(net));
  has_cap_ = !fwd_.uniform || options.force_capacity_structures;
  nodes_.reserve(2 * net.n);
  BuildNode(1, net.n, 0);
  for (CueNode& node : nodes_) FillPayload(node);
}

int CueTree::BuildNode(int l, int r, int depth) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(CueNode{});
  nodes_[id].l = l;
  nodes_[id].r = r;
  height_ = std::max(height_, depth);
  if (l < r) {
    const int mid = (l + r) / 2;
    const int left = BuildNode(l, mid, depth + 1);
    const int right = BuildNode(mid + 1, r, depth + 1);
    nodes_[id].left = left;
    nodes_[id].right = right;
  }
  return id;
}

void CueTree::FillPayload(CueNode& node) {
  const int n = fwd_.n;
  node.plus = MakePayload(fwd_, node.l, node.r, has_cap_);
  node.minus = MakePayload(rev_, n + 1 - node.r, n + 1 - node.l, has_cap_);
}

void CueTree::Cover(int id, int i, int j, std::vector<int>& out) const {
  const CueNode& node = nodes_[id];
  if (j < node.l || node.r < i) return;
  if (i <= node.l && node.r <= j) {
    out.push_back(id);
    return;
  }
  Cover(node.left, i, j, out);
  Cover(node.right, i, j, out);
}

void CueTree::AppendMaximalSubpathNodes(int i, int j,
                                        std::vector<int>& out) const {
  if (i > j) return;
  if (i < 1 || j > n()) throw std::out_of_range("subpath outside network");
  Cover(0, i, j, out);
}

std::vector<int> CueTree::MaximalSubpathNodes(int i, int j) const {
  std::vector<int> out;
  AppendMaximalSubpathNodes(i, j, out);
  return out;
}

size_t CueTree::MemoryBytes() const {
  size_t total = sizeof(CueTree) + nodes_.capacity() * sizeof(CueNode) +
                 fwd_.rmq.MemoryBytes() + rev_.rmq.MemoryBytes() +
                 4 * (fwd_.W.capacity() * sizeof(double));
  for (const CueNode& node : nodes_) {
    for (const DirPayload* p : {&node.plus, &node.minus}) {
      total += p->env.MemoryBytes() - sizeof(Envelope);
      if (p->has_cap) total += p->cap.MemoryBytes() - sizeof(CapSeg);
    }
  }
  return total;
}

void CueTree::Save(const std::string& path) const {
  if constexpr (std::endian::native != std::endian::little) {
    throw std::runtime_error("cache files need a little-endian host");
  }
  std::vector<char> out(kMagic, kMagic + sizeof(kMagic));
  serial::Put<uint32_t>(out, kFormatVersion);
  serial::Put<uint64_t>(out, Fingerprint(net_));
  serial::Put<int32_t>(out, n());
  serial::Put<uint8_t>(out, has_cap_ ? 1 : 0);
  serial::Put<int32_t>(out, height_);
  serial::Put<uint64_t>(out, nodes_.size());
  for (const CueNode& node : nodes_) {
    serial::Put<int32_t>(out, node.l);
    serial::Put<int32_t>(out, node.r);
    serial::Put<int32_t>(out, node.left);
    serial::Put<int32_t>(out, node.right);
    PutPayload(out, node.plus);
    PutPayload(out, node.minus);
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
}

CueTree CueTree::Load(const PathNetwork& net, const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot read " + path);
  std::vector<char> data((std::istreambuf_iterator<char>(file)),
                         std::istreambuf_iterator<char>());
  if (data.size() < sizeof(kMagic) + 4 ||
      std::memcmp(data.data(), kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("not a cue tree cache: " + path);
  }
  const char* in = data.data() + sizeof(kMagic);
  if (serial::Get<uint32_t>(in) != kFormatVersion) {
    throw std::runtime_error("unsupported cache version");
  }
  if (serial::Get<uint64_t>(in) != Fingerprint(net)) {
    throw std::runtime_error("cache was built for a different network");
  }
  CueTree tree;
  tree.net_ = net;
  tree.fwd_ = BuildTables(net);
  tree.rev_ = BuildTables(Mirror(net));
  if (serial::Get<int32_t>(in) != net.n) {
    throw std::runtime_error("cache size mismatch");
  }
  tree.has_cap_ = serial::Get<uint8_t>(in) != 0;
  tree.height_ = serial::Get<int32_t>(in);
  const uint64_t count = serial::Get<uint64_t>(in);
  tree.nodes_.resize(count);
  for (CueNode& node : tree.nodes_) {
    node.l = serial::Get<int32_t>(in);
    node.r = serial::Get<int32_t>(in);
    node.left = serial::Get<int32_t>(in);
    node.right = serial::Get<int32_t>(in);
    node.plus = GetPayload(in);
    node.minus = GetPayload(in);
  }
  return tree;
}

}  // namespace minsink
