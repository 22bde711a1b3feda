#include "minsink/optquery.h"

#include <algorithm>
#include <stdexcept>

#include "minsink/numeric.h"

namespace minsink {

std::string ModelName(Model model) {
  return model == Model::kConfluent ? "confluent" : "nonconfluent";
}

bool ParseModel(const std::string& text, Model& model) {
  if (text == "confluent") {
    model = Model::kConfluent;
    return true;
  }
  if (text == "nonconfluent" || text == "non-confluent") {
    model = Model::kNonConfluent;
    return true;
  }
  return false;
}

namespace {

struct Lin {
  double v, s;  // value at a point and slope of the piece next to it
};

// One regime of one maximal node, seen from origin o.
struct PieceFn {
  const PrefixTables* t;
  const DirPayload* pay;
  Regime regime;
  int rho;
  int ell;
  double c, off;

  double Value(double z) const {
    const PrefixTables& w = *t;
    switch (regime) {
      case Regime::kHead:
        return z <= w.W[ell - 1] ? 0.0 : (z - w.W[ell - 1]) / c + off;
      case Regime::kCapped:
        if (z <= w.W[ell]) return 0.0;
        return off + pay->cap.LineValue(w, pay->cap.OwnerIn(w, rho, z), c, z);
      case Regime::kFree:
        if (z <= w.W[ell]) return 0.0;
        return off + pay->env.RawValue(z);
    }
    return 0.0;
  }
  // Piece (x, x + eps) for x inside the regime's domain.
  Lin Right(double x) const {
    const PrefixTables& w = *t;
    switch (regime) {
      case Regime::kHead:
        return {(x - w.W[ell - 1]) / c + off, 1.0 / c};
      case Regime::kCapped: {
        const int h = pay->cap.OwnerRightOf(w, rho, x);
        return {off + pay->cap.LineValue(w, h, c, x), 1.0 / c};
      }
      case Regime::kFree: {
        const int p = pay->env.PieceRightOf(x);
        return {off + pay->env.PieceValue(p, x), pay->env.PieceSlope(p)};
      }
    }
    return {0.0, 0.0};
  }
  // Piece (x - eps, x].
  Lin Left(double x) const {
    const PrefixTables& w = *t;
    switch (regime) {
      case Regime::kHead:
        return {(x - w.W[ell - 1]) / c + off, 1.0 / c};
      case Regime::kCapped: {
        const int h = pay->cap.OwnerIn(w, rho, x);
        return {off + pay->cap.LineValue(w, h, c, x), 1.0 / c};
      }
      case Regime::kFree: {
        const int p = pay->env.PieceAt(x);
        return {off + pay->env.PieceValue(p, x), pay->env.PieceSlope(p)};
      }
    }
    return {0.0, 0.0};
  }
  // Antiderivative, valid where the regime applies.
  double Anti(double z) const {
    const PrefixTables& w = *t;
    switch (regime) {
      case Regime::kHead: {
        const double d = z - w.W[ell - 1];
        return 0.5 * d * d / c + off * d;
      }
      case Regime::kCapped:
        return off * z + pay->cap.IntegralIn(w, rho, c, z);
      case Regime::kFree:
        return off * z + pay->env.RawIntegral(z);
    }
    return 0.0;
  }
  // Sorted candidate breakpoints: activation points or envelope breakpoints.
  template <class F>
  void ForEachBreakList(F&& f) const {
    if (regime == Regime::kHead) return;
    const PrefixTables& w = *t;
    if (regime == Regime::kCapped) {
      const int r = pay->end;
      if (r - 1 >= ell + 1) f(w.W.data() + ell + 1, r - 1 - ell);
    } else {
      const auto& bp = pay->env.bp();
      f(bp.data(), static_cast<int>(bp.size()));
    }
  }
};

// Moves (x, y) so that no candidate lies strictly inside, keeping
// pred(x) false. at(k) ascending for k in [0, count).
template <class At, class Pred>
void NarrowBy(int count, At at, double& x, double& y, Pred pred) {
  int lo = 0, hi = count;
  {
    int a = 0, b = count;  // first index with at > x
    while (a < b) {
      const int m = (a + b) / 2;
      if (at(m) > x) b = m; else a = m + 1;
    }
    lo = a;
    a = lo, b = count;  // first index with at >= y
    while (a < b) {
      const int m = (a + b) / 2;
      if (at(m) >= y) b = m; else a = m + 1;
    }
    hi = a;
  }
  int a = lo, b = hi;  // first candidate where pred holds
  while (a < b) {
    const int m = (a + b) / 2;
    if (pred(at(m))) b = m; else a = m + 1;
  }
  if (a > lo) x = at(a - 1);
  if (a < hi) y = at(a);
}

template <class Pred>
void NarrowArray(const double* arr, int count, double& x, double& y,
                 Pred pred) {
  NarrowBy(count, [arr](int k) { return arr[k]; }, x, y, pred);
}

// Same for candidates total - arr[k], which ascend as k descends.
template <class Pred>
void NarrowMirrored(const double* arr, int count, double total, double& x,
                    double& y, Pred pred) {
  NarrowBy(
      count, [arr, count, total](int k) { return total - arr[count - 1 - k]; },
      x, y, pred);
}

// g lies strictly above e just right of the point where both were taken.
bool AboveRight(const Lin& g, const Lin& e) {
  const int sign = TieSign(g.v, e.v);
  if (sign != 0) return sign > 0;
  return TieSign(g.s, e.s) > 0;
}

// Root of the difference of two linear pieces on (x, y) given that the new
// one is not above at x and is above somewhere before y.
double LinearTakeover(double x, double y, const Lin& n, const Lin& e) {
  if (n.s > e.s) {
    const double r = x + (e.v - n.v) / (n.s - e.s);
    if (r < y) return std::max(r, x);
  }
  return y;
}

QueryPath Resolve(const CueTree& tree, QueryPath path) {
  if (path == QueryPath::kAuto) {
    return tree.has_capacity_structures() ? QueryPath::kGeneral
                                          : QueryPath::kUniform;
  }
  if (path == QueryPath::kGeneral && !tree.has_capacity_structures()) {
    throw std::invalid_argument("tree was built without capacity structures");
  }
  if (path == QueryPath::kUniform && !tree.uniform()) {
    throw std::invalid_argument("uniform path on a non-uniform network");
  }
  return path;
}

PieceFn MakeFn(const CueTree& tree, bool minus, int origin, int node,
               Regime regime, int rho) {
  const PrefixTables& t = tree.view(minus);
  const CueNode& u = tree.node(node);
  const DirPayload& pay = minus ? u.minus : u.plus;
  const int ell = pay.origin;
  return PieceFn{&t,  &pay, regime, rho, ell, t.Cap(origin, ell),
                 t.tau * (t.Lcum[ell] - t.Lcum[origin])};
}

PieceFn MakeFn(const CueTree& tree, const SideFunction& side, int s) {
  const SideFunction::Piece& p = side.piece(s);
  return MakeFn(tree, side.minus(), side.origin(), p.node, p.regime(),
                p.rho());
}

// Piece whose interval (start, end] contains z; z > domain start.
int PieceAtOrBefore(const SideFunction& side, double z) {
  int a = 1, b = side.NumPieces();  // first piece with start >= z
  while (a < b) {
    const int m = (a + b) / 2;
    if (side.piece(m).start >= z) b = m; else a = m + 1;
  }
  return a - 1;
}

// Piece whose interval contains z+.
int PieceRightOfZ(const SideFunction& side, double z) {
  int a = 1, b = side.NumPieces();  // first piece with start > z
  while (a < b) {
    const int m = (a + b) / 2;
    if (side.piece(m).start > z) b = m; else a = m + 1;
  }
  return a - 1;
}

}  // namespace

class SideBuilder {
 public:
  SideBuilder(const CueTree& tree, bool minus, int origin, int end,
              QueryPath path)
      : tree_(tree),
        t_(tree.view(minus)),
        minus_(minus),
        origin_(origin),
        end_(end),
        path_(Resolve(tree, path)) {}

  SideFunction Build() {
    SideFunction side;
    side.minus_ = minus_;
    side.origin_ = origin_;
    side.end_ = end_;
    side.lo_ = t_.W[origin_];
    side.hi_ = t_.W[end_];
    hi_ = side.hi_;
    if (end_ <= origin_) return side;
    std::vector<int> nodes;
    const int n = tree_.n();
    if (!minus_) {
      tree_.AppendMaximalSubpathNodes(origin_ + 1, end_, nodes);
    } else {
      tree_.AppendMaximalSubpathNodes(n + 1 - end_, n - origin_, nodes);
      std::reverse(nodes.begin(), nodes.end());
    }
    for (int id : nodes) AddNode(id);

    side.pieces_.resize(fns_.size());
    double cum = 0.0;
    for (size_t s = 0; s < fns_.size(); ++s) {
      const double a = starts_[s];
      const double b = s + 1 < fns_.size() ? starts_[s + 1] : hi_;
      side.pieces_[s] = {a, cum, nodes_[s],
                         (static_cast<int32_t>(fns_[s].regime) << 28) |
                             fns_[s].rho};
      cum += fns_[s].Anti(b) - fns_[s].Anti(a);
    }
    return side;
  }

 private:
  // Composite function of one node: the head line, or the capped part up to
  // delta followed by the free part.
  struct NewFn {
    PieceFn capped, free;
    double delta;
    double Value(double z) const {
      return z <= delta ? capped.Value(z) : free.Value(z);
    }
    Lin Right(double x) const {
      return x < delta ? capped.Right(x) : free.Right(x);
    }
  };

  double End(size_t s) const {
    return s + 1 < starts_.size() ? starts_[s + 1] : hi_;
  }

  void Truncate(double mu) {
    while (!starts_.empty() && starts_.back() >= mu) {
      starts_.pop_back();
      fns_.pop_back();
      nodes_.pop_back();
    }
  }

  void Push(double start, const PieceFn& fn, int node) {
    starts_.push_back(start);
    fns_.push_back(fn);
    nodes_.push_back(node);
  }

  // Smallest z >= x_new from which g strictly exceeds the current envelope,
  // or hi_ when it never does.
  double Takeover(const NewFn& g, double x_new) {
    const int count = static_cast<int>(starts_.size());
    int s0 = static_cast<int>(
                 std::upper_bound(starts_.begin(), starts_.end(), x_new) -
                 starts_.begin()) -
             1;
    s0 = std::max(s0, 0);
    auto above_at = [&](int s) {
      const double b = End(s);
      return TieSign(g.Value(b), fns_[s].Value(b)) > 0;
    };
    int a = s0, b = count;
    while (a < b) {
      const int m = (a + b) / 2;
      if (above_at(m)) b = m; else a = m + 1;
    }
    if (a == count) return hi_;
    const int s = a;
    const PieceFn& e = fns_[s];
    double x = std::max(starts_[s], x_new), y = End(s);
    auto pred = [&](double z) {
      return AboveRight(g.Right(z), e.Right(z));
    };
    if (pred(x)) return x;
    e.ForEachBreakList(
        [&](const double* arr, int cnt) { NarrowArray(arr, cnt, x, y, pred); });
    if (g.delta > x && g.delta < y) NarrowArray(&g.delta, 1, x, y, pred);
    g.capped.ForEachBreakList(
        [&](const double* arr, int cnt) { NarrowArray(arr, cnt, x, y, pred); });
    if (g.free.regime != g.capped.regime) {
      g.free.ForEachBreakList([&](const double* arr, int cnt) {
        NarrowArray(arr, cnt, x, y, pred);
      });
    }
    return LinearTakeover(x, y, g.Right(x), e.Right(x));
  }

  // Smallest z > W_{q-1} where the free envelope beats the capped one.
  double Delta(const PieceFn& capped, const PieceFn& free, int q) {
    if (TieSign(free.Value(hi_), capped.Value(hi_)) <= 0) return hi_ + 1.0;
    double x = t_.W[q - 1], y = hi_;
    auto pred = [&](double z) {
      return AboveRight(free.Right(z), capped.Right(z));
    };
    if (pred(x)) return x;
    free.ForEachBreakList(
        [&](const double* arr, int cnt) { NarrowArray(arr, cnt, x, y, pred); });
    capped.ForEachBreakList(
        [&](const double* arr, int cnt) { NarrowArray(arr, cnt, x, y, pred); });
    return LinearTakeover(x, y, free.Right(x), capped.Right(x));
  }

  void AddNode(int id) {
    const CueNode& u = tree_.node(id);
    const DirPayload& pay = minus_ ? u.minus : u.plus;
    const int ell = pay.origin, r = pay.end;
    const double c = t_.Cap(origin_, ell);
    const double off = t_.tau * (t_.Lcum[ell] - t_.Lcum[origin_]);
    const PieceFn head{&t_, &pay, Regime::kHead, 0, ell, c, off};
    if (starts_.empty()) {
      Push(t_.W[origin_], head, id);
    } else {
      const NewFn g{head, head, hi_ + 1.0};
      const double mu = Takeover(g, t_.W[ell - 1]);
      if (mu < hi_) {
        Truncate(mu);
        Push(mu, head, id);
      }
    }
    if (r <= ell) return;

    PieceFn free{&t_, &pay, Regime::kFree, 0, ell, c, off};
    PieceFn capped = free;
    double delta = t_.W[ell];
    if (path_ == QueryPath::kGeneral) {
      capped.regime = Regime::kCapped;
      capped.rho = pay.cap.Regime(c);
      const int q = t_.rmq.FirstBelow(ell, r, c);
      if (q == ell + 1) {
        delta = t_.W[ell];
      } else if (q > r) {
        delta = hi_ + 1.0;
      } else {
        delta = Delta(capped, free, q);
      }
      if (delta <= t_.W[ell]) capped = free;
    } else {
      capped = free;
    }
    const NewFn g{capped, free, delta};
    const double mu = Takeover(g, t_.W[ell]);
    if (mu >= hi_) return;
    Truncate(mu);
    if (capped.regime == Regime::kCapped && mu < std::min(delta, hi_)) {
      Push(mu, capped, id);
    }
    const double free_start = std::max(mu, delta);
    if (free_start < hi_) Push(free_start, free, id);
  }

  const CueTree& tree_;
  const PrefixTables& t_;
  bool minus_;
  int origin_, end_;
  QueryPath path_;
  double hi_ = 0.0;
  std::vector<double> starts_;
  std::vector<PieceFn> fns_;
  std::vector<int> nodes_;
};

double SideFunction::Value(const CueTree& tree, double z) const {
  if (pieces_.empty() || z <= lo_) return 0.0;
  return MakeFn(tree, *this, PieceAtOrBefore(*this, z)).Value(z);
}

double SideFunction::Integral(const CueTree& tree, double z) const {
  if (pieces_.empty() || z <= lo_) return 0.0;
  const int s = PieceAtOrBefore(*this, z);
  const PieceFn fn = MakeFn(tree, *this, s);
  return pieces_[s].cum + fn.Anti(z) - fn.Anti(pieces_[s].start);
}

SideFunction BuildSide(const CueTree& tree, bool minus, int origin, int end,
                       QueryPath path) {
  if (origin < 0 || end > tree.n() || origin > end) {
    throw std::out_of_range("side range outside network");
  }
  return SideBuilder(tree, minus, origin, end, path).Build();
}

IntervalPair Phase2Intervals(const CueTree& tree, int i, int j,
                             QueryPath path) {
  const int n = tree.n();
  if (i < 1 || j > n || i >= j) throw std::out_of_range("need 1 <= i < j <= n");
  return {BuildSide(tree, false, i, j - 1, path),
          BuildSide(tree, true, n + 1 - j, n - i, path)};
}

double PseudoIntersection(const CueTree& tree, int i, int j,
                          const SideFunction& plus,
                          const SideFunction& minus) {
  const PrefixTables& t = tree.fwd();
  const double total = t.Total();
  const double lo = t.W[i], hi = t.W[j - 1];
  if (j == i + 1) return lo;
  // theta^{i,+}(z+) from the plus side; theta^{j,-}(z+) is the mirrored side
  // at total - z with left-closed pieces.
  auto plus_right = [&](double z) {
    return MakeFn(tree, plus, PieceRightOfZ(plus, z)).Right(z);
  };
  auto minus_left = [&](double z) {
    const double zm = total - z;
    return MakeFn(tree, minus, PieceAtOrBefore(minus, zm)).Left(zm);
  };
  auto pred = [&](double z) {
    return TieSign(plus_right(z).v, minus_left(z).v) >= 0;
  };
  if (pred(lo)) return lo;
  double x = lo, y = hi;
  NarrowBy(
      plus.NumPieces(), [&](int k) { return plus.piece(k).start; }, x, y,
      pred);
  const int mc = minus.NumPieces();
  NarrowBy(
      mc, [&](int k) { return total - minus.piece(mc - 1 - k).start; }, x, y,
      pred);
  const PieceFn pf = MakeFn(tree, plus, PieceRightOfZ(plus, x));
  pf.ForEachBreakList(
      [&](const double* arr, int cnt) { NarrowArray(arr, cnt, x, y, pred); });
  const PieceFn mf = MakeFn(tree, minus, PieceAtOrBefore(minus, total - x));
  mf.ForEachBreakList([&](const double* arr, int cnt) {
    NarrowMirrored(arr, cnt, total, x, y, pred);
  });
  // Both sides are linear on (x, y); read the lines off the midpoint so that a
  // breakpoint sitting exactly at x does not select the neighbouring line.
  const double m = 0.5 * (x + y);
  const Lin a = plus_right(m);
  const Lin b = minus_left(m);
  const double slope = a.s + b.s;
  if (slope > 0.0) {
    const double r = m + (b.v - a.v) / slope;
    if (r < y) return std::max(r, x);
  }
  return y;
}

double PhiValue(const CueTree& tree, const SideFunction& plus,
                const SideFunction& minus, double z) {
  const double total = tree.fwd().Total();
  return plus.Integral(tree, z) + minus.Integral(tree, total - z);
}

OptResult Phase4Integral(const CueTree& tree, int i, int j,
                         const SideFunction& plus, const SideFunction& minus,
                         double z_star, Model model) {
  OptResult res;
  res.model = model;
  if (model == Model::kNonConfluent) {
    res.z_star = z_star;
    res.value = PhiValue(tree, plus, minus, z_star);
    return res;
  }
  const std::vector<double>& W = tree.fwd().W;
  // Grid values W_i..W_{j-1} bracketing z_star.
  const int h_hi = static_cast<int>(
      std::lower_bound(W.begin() + i, W.begin() + j, z_star) - W.begin());
  const int up = std::min(h_hi, j - 1);
  const int down = (h_hi <= j - 1 && W[h_hi] == z_star) ? h_hi
                                                        : std::max(h_hi - 1, i);
  const double v_down = PhiValue(tree, plus, minus, W[down]);
  res.z_star = W[down];
  res.value = v_down;
  if (up != down) {
    const double v_up = PhiValue(tree, plus, minus, W[up]);
    if (TieSign(v_up, v_down) < 0) {
      res.z_star = W[up];
      res.value = v_up;
    }
  }
  return res;
}

OptResult OptQuery(const CueTree& tree, int i, int j, Model model,
                   QueryPath path) {
  const IntervalPair sides = Phase2Intervals(tree, i, j, path);
  const double z = PseudoIntersection(tree, i, j, sides.plus, sides.minus);
  return Phase4Integral(tree, i, j, sides.plus, sides.minus, z, model);
}

OptResult OptQueryUniform(const CueTree& tree, int i, int j, Model model) {
  return OptQuery(tree, i, j, model, QueryPath::kUniform);
}

LinkWeights::LinkWeights(const CueTree& tree, Model model, QueryPath path)
    : tree_(tree), model_(model), path_(Resolve(tree, path)) {
  plus_.resize(tree.n() + 1);
  minus_.resize(tree.n() + 2);
}

const SideFunction& LinkWeights::Plus(int i) {
  auto& slot = plus_[i];
  if (!slot) {
    slot = std::make_unique<SideFunction>(
        BuildSide(tree_, false, i, tree_.n(), path_));
    ++sides_built_;
  }
  return *slot;
}

const SideFunction& LinkWeights::Minus(int j) {
  auto& slot = minus_[j];
  if (!slot) {
    slot = std::make_unique<SideFunction>(
        BuildSide(tree_, true, tree_.n() + 1 - j, tree_.n(), path_));
    ++sides_built_;
  }
  return *slot;
}

OptResult LinkWeights::Evaluate(int i, int j) {
  const int n = tree_.n();
  if (i < 0 || j > n + 1 || i >= j) {
    throw std::out_of_range("link weight needs 0 <= i < j <= n+1");
  }
  ++queries_;
  OptResult res;
  res.model = model_;
  const double total = tree_.fwd().Total();
  if (i == 0 && j == n + 1) {
    res.infinite = true;
    res.value = kInfiniteWeight;
    return res;
  }
  if (i == 0) {
    res.z_star = 0.0;
    res.value = Minus(j).Integral(tree_, total);
    return res;
  }
  if (j == n + 1) {
    res.z_star = total;
    res.value = Plus(i).Integral(tree_, total);
    return res;
  }
  const SideFunction& a = Plus(i);
  const SideFunction& b = Minus(j);
  const double z = PseudoIntersection(tree_, i, j, a, b);
  return Phase4Integral(tree_, i, j, a, b, z, model_);
}

double LinkWeights::Weight(int i, int j) { return Evaluate(i, j).value; }

size_t LinkWeights::CacheBytes() const {
  size_t total = 0;
  for (const auto& s : plus_) if (s) total += s->MemoryBytes();
  for (const auto& s : minus_) if (s) total += s->MemoryBytes();
  return total;
}

void LinkWeights::ClearCache() {
  for (auto& s : plus_) s.reset();
  for (auto& s : minus_) s.reset();
}

}  // namespace minsink
