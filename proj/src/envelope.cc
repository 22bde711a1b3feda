#include "minsink/envelope.h"

#include <algorithm>
#include <stdexcept>

#include "minsink/numeric.h"
#include "serial.h"

namespace minsink {

using serial::Get;
using serial::GetVec;
using serial::Put;
using serial::PutVec;

namespace {

struct Seg {
  double t, c, o;
  int32_t id;
  double At(double z) const { return (z - t) / c + o; }
};

// Piecewise-linear function on (0, total]: seg[p] owns (bp[p], bp[p+1]].
struct Pl {
  std::vector<double> bp;
  std::vector<Seg> seg;

  void Push(double right, const Seg& s) {
    if (right <= bp.back()) return;  // degenerate
    if (!seg.empty()) {
      const Seg& last = seg.back();
      if (last.id == s.id && last.t == s.t && last.c == s.c && last.o == s.o) {
        bp.back() = right;
        return;
      }
    }
    seg.push_back(s);
    bp.push_back(right);
  }
};

constexpr double kInfCap = __builtin_inf();

Pl SingleLine(const ThetaLine& line, double total) {
  Pl f;
  f.bp.push_back(0.0);
  const Seg zero{0.0, kInfCap, 0.0, line.id};
  const Seg lin{line.threshold, line.cap, line.offset, line.id};
  if (line.threshold > 0.0) f.Push(std::min(line.threshold, total), zero);
  if (line.threshold < total) f.Push(total, lin);
  return f;
}

// True when a wins at the right of x on an interval where both are linear.
bool Wins(const Seg& a, const Seg& b, double va, double vb) {
  const int s = TieSign(va, vb);
  return s > 0 || (s == 0 && a.id < b.id);
}

Pl Merge(const Pl& f, const Pl& g) {
  Pl h;
  h.bp.push_back(0.0);
  h.bp.reserve(f.bp.size() + g.bp.size());
  h.seg.reserve(f.seg.size() + g.seg.size());
  size_t p = 0, q = 0;
  double x = 0.0;
  while (p < f.seg.size() && q < g.seg.size()) {
    const double y = std::min(f.bp[p + 1], g.bp[q + 1]);
    const Seg& a = f.seg[p];
    const Seg& b = g.seg[q];
    const double a0 = a.At(x), b0 = b.At(x);
    const double a1 = a.At(y), b1 = b.At(y);
    const bool left = Wins(a, b, a0, b0);
    const bool right = Wins(a, b, a1, b1);
    if (left == right) {
      h.Push(y, left ? a : b);
    } else {
      const double d0 = a0 - b0, d1 = a1 - b1;
      double r = x;
      if (d0 != d1) r = x + d0 * (y - x) / (d0 - d1);
      r = std::clamp(r, x, y);
      h.Push(r, left ? a : b);
      h.Push(y, right ? a : b);
    }
    x = y;
    if (f.bp[p + 1] == y) ++p;
    if (g.bp[q + 1] == y) ++q;
  }
  return h;
}

Pl BuildRange(const std::vector<ThetaLine>& lines, size_t lo, size_t hi,
              double total) {
  if (hi - lo == 1) return SingleLine(lines[lo], total);
  const size_t mid = (lo + hi) / 2;
  return Merge(BuildRange(lines, lo, mid, total),
               BuildRange(lines, mid, hi, total));
}

}  // namespace

Envelope BuildUpperEnvelope(const std::vector<ThetaLine>& lines,
                            double total) {
  if (lines.empty()) throw std::invalid_argument("envelope of no lines");
  if (!(total > 0.0)) throw std::invalid_argument("envelope domain is empty");
  const Direction dir = lines.front().direction;
  std::vector<ThetaLine> work = lines;
  for (ThetaLine& line : work) {
    if (line.direction != dir) {
      throw std::invalid_argument("mixed line directions");
    }
    if (dir == Direction::kLeftward) {
      line.threshold = total - line.threshold;
      line.direction = Direction::kRightward;
    }
  }
  Pl f = BuildRange(work, 0, work.size(), total);
  Envelope env;
  env.total_ = total;
  env.leftward_ = dir == Direction::kLeftward;
  env.bp_ = std::move(f.bp);
  const size_t np = f.seg.size();
  env.t_.resize(np);
  env.c_.resize(np);
  env.o_.resize(np);
  env.id_.resize(np);
  env.integ_.resize(np + 1);
  env.integ_[0] = 0.0;
  for (size_t p = 0; p < np; ++p) {
    env.t_[p] = f.seg[p].t;
    env.c_[p] = f.seg[p].c;
    env.o_[p] = f.seg[p].o;
    env.id_[p] = f.seg[p].id;
  }
  for (size_t p = 0; p < np; ++p) {
    env.integ_[p + 1] = env.IntegralInPiece(static_cast<int>(p), env.bp_[p + 1]);
  }
  return env;
}

int Envelope::PieceAt(double z) const {
  const int np = NumPieces();
  if (z > bp_[np - 1]) return np - 1;
  if (z <= bp_[1]) return 0;
  // First breakpoint >= z, minus one.
  const auto it = std::lower_bound(bp_.begin() + 1, bp_.end() - 1, z);
  return static_cast<int>(it - bp_.begin()) - 1;
}

int Envelope::PieceRightOf(double z) const {
  const int np = NumPieces();
  if (z >= bp_[np - 1]) return np - 1;
  if (z < bp_[1]) return 0;
  const auto it = std::upper_bound(bp_.begin() + 1, bp_.end() - 1, z);
  return static_cast<int>(it - bp_.begin()) - 1;
}

double Envelope::RawIntegral(double z) const {
  if (z <= 0.0) return 0.0;
  return IntegralInPiece(PieceAt(z), std::min(z, total_));
}

int Envelope::Owner(double z) const {
  if (z < 0.0 || z > total_) throw std::out_of_range("z outside envelope");
  if (!leftward_) return id_[PieceAt(z)];
  return id_[PieceAt(total_ - z)];
}

double Envelope::Value(double z) const {
  if (z < 0.0 || z > total_) throw std::out_of_range("z outside envelope");
  if (!leftward_) return RawValue(z);
  return RawValue(total_ - z);
}

double Envelope::PrefixIntegral(double z) const {
  if (z < 0.0 || z > total_) throw std::out_of_range("z outside envelope");
  if (!leftward_) return RawIntegral(z);
  return RawIntegral(total_) - RawIntegral(total_ - z);
}

std::vector<double> Envelope::Breakpoints() const {
  if (!leftward_) return bp_;
  std::vector<double> out(bp_.rbegin(), bp_.rend());
  for (double& b : out) b = total_ - b;
  return out;
}

std::vector<int> Envelope::Owners() const {
  std::vector<int> out(id_.begin(), id_.end());
  if (leftward_) std::reverse(out.begin(), out.end());
  return out;
}

std::vector<double> Envelope::BreakpointIntegrals() const {
  std::vector<double> out;
  out.reserve(bp_.size());
  for (double b : Breakpoints()) out.push_back(PrefixIntegral(b));
  return out;
}

size_t Envelope::MemoryBytes() const {
  return sizeof(Envelope) +
         (bp_.capacity() + t_.capacity() + c_.capacity() + o_.capacity() +
          integ_.capacity()) *
             sizeof(double) +
         id_.capacity() * sizeof(int32_t);
}

void Envelope::Serialize(std::vector<char>& out) const {
  Put(out, total_);
  Put<uint8_t>(out, leftward_ ? 1 : 0);
  PutVec(out, bp_);
  PutVec(out, t_);
  PutVec(out, c_);
  PutVec(out, o_);
  PutVec(out, integ_);
  PutVec(out, id_);
}

Envelope Envelope::Deserialize(const char*& in) {
  Envelope env;
  env.total_ = Get<double>(in);
  env.leftward_ = Get<uint8_t>(in) != 0;
  env.bp_ = GetVec<double>(in);
  env.t_ = GetVec<double>(in);
  env.c_ = GetVec<double>(in);
  env.o_ = GetVec<double>(in);
  env.integ_ = GetVec<double>(in);
  env.id_ = GetVec<int32_t>(in);
  return env;
}

}  // namespace minsink
