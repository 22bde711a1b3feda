#ifndef MINSINK_OPTQUERY_H_
#define MINSINK_OPTQUERY_H_

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "minsink/cuetree.h"

namespace minsink {

enum class Model { kConfluent, kNonConfluent };

std::string ModelName(Model model);
// Accepts "confluent" and "nonconfluent" (also "non-confluent").
bool ParseModel(const std::string& text, Model& model);

// Which formula a piece of theta^{o,+} follows inside one maximal node u:
//   kHead:   the single line theta^{o,+,l_u};
//   kCapped: tau*L_{o,l_u} + capacity-parameterized envelope at C_{o,l_u};
//   kFree:   tau*L_{o,l_u} + free envelope of the node.
enum class Regime : uint8_t { kHead = 0, kCapped = 1, kFree = 2 };

// theta^{o,+} over (W_o, W_e] in an oriented view (original network for the
// plus side, mirrored network for the minus side), as consecutive pieces.
// Piece s covers (start(s), start(s+1)] with start(NumPieces()) = W_e.
class SideFunction {
 public:
  struct Piece {
    double start;
    double cum;  // integral of theta^{o,+} over [0, start]
    int32_t node;
    int32_t packed;  // regime << 28 | capacity regime rho
    Regime regime() const { return static_cast<Regime>(packed >> 28); }
    int rho() const { return packed & ((1 << 28) - 1); }
  };

  SideFunction() = default;

  bool minus() const { return minus_; }
  int origin() const { return origin_; }
  int end() const { return end_; }
  double domain_start() const { return lo_; }
  double domain_end() const { return hi_; }
  int NumPieces() const { return static_cast<int>(pieces_.size()); }
  const Piece& piece(int s) const { return pieces_[s]; }
  double PieceEnd(int s) const {
    return s + 1 < NumPieces() ? pieces_[s + 1].start : hi_;
  }

  // Value with left-closed pieces; 0 for z <= W_o.
  double Value(const CueTree& tree, double z) const;
  // Integral over [0, z] for z <= W_e.
  double Integral(const CueTree& tree, double z) const;

  size_t MemoryBytes() const {
    return sizeof(*this) + pieces_.capacity() * sizeof(Piece);
  }

 private:
  friend class SideBuilder;
  friend class SideEval;

  bool minus_ = false;
  int origin_ = 0, end_ = 0;
  double lo_ = 0.0, hi_ = 0.0;
  std::vector<Piece> pieces_;
};

enum class QueryPath {
  kAuto,     // uniform path on uniform networks without capacity structures
  kGeneral,  // capped / free split through the capacity structures
  kUniform,  // free envelopes only; valid on uniform-capacity networks
};

// Phase 2: theta^{o,+} over (W_o, W_e] from the maximal nodes of [o+1..e].
SideFunction BuildSide(const CueTree& tree, bool minus, int origin, int end,
                       QueryPath path = QueryPath::kAuto);

struct IntervalPair {
  SideFunction plus;   // theta^{i,+} on (W_i, W_{j-1}]
  SideFunction minus;  // theta^{j,-} on [W_i, W_{j-1}), mirrored coordinates
};

IntervalPair Phase2Intervals(const CueTree& tree, int i, int j,
                             QueryPath path = QueryPath::kAuto);

// Phase 3: smallest z in [W_i, W_{j-1}] with theta^{i,+}(z+) >= theta^{j,-}(z+).
double PseudoIntersection(const CueTree& tree, int i, int j,
                          const SideFunction& plus, const SideFunction& minus);

// Phi^{i,j}(z) = int_0^z theta^{i,+} + int_z^{W_n} theta^{j,-}.
double PhiValue(const CueTree& tree, const SideFunction& plus,
                const SideFunction& minus, double z);

struct OptResult {
  double z_star = 0.0;
  double value = 0.0;
  Model model = Model::kNonConfluent;
  bool infinite = false;  // the (0, n+1) link
};

// Phase 4: the optimal value given the divider from Phase 3. For the
// confluent model the divider is moved to the best bracketing W grid value.
OptResult Phase4Integral(const CueTree& tree, int i, int j,
                         const SideFunction& plus, const SideFunction& minus,
                         double z_star, Model model);

// OPT(i, j) for 1 <= i < j <= n with freshly built sides.
OptResult OptQuery(const CueTree& tree, int i, int j, Model model,
                   QueryPath path = QueryPath::kAuto);
OptResult OptQueryUniform(const CueTree& tree, int i, int j, Model model);

// Link weights w'(i, j), 0 <= i < j <= n+1. Sides are built once per end
// vertex over the whole remaining path and reused by every pair sharing it.
// Not thread-safe; use one instance per solve.
class LinkWeights {
 public:
  LinkWeights(const CueTree& tree, Model model,
              QueryPath path = QueryPath::kAuto);

  const CueTree& tree() const { return tree_; }
  Model model() const { return model_; }
  // Infinite for (0, n+1).
  double Weight(int i, int j);
  OptResult Evaluate(int i, int j);

  int64_t queries() const { return queries_; }
  int64_t sides_built() const { return sides_built_; }
  size_t CacheBytes() const;
  void ClearCache();

 private:
  const SideFunction& Plus(int i);
  const SideFunction& Minus(int j);

  const CueTree& tree_;
  Model model_;
  QueryPath path_;
  std::vector<std::unique_ptr<SideFunction>> plus_, minus_;
  int64_t queries_ = 0;
  int64_t sides_built_ = 0;
};

inline constexpr double kInfiniteWeight = std::numeric_limits<double>::infinity();

}  // namespace minsink

#endif  // MINSINK_OPTQUERY_H_
