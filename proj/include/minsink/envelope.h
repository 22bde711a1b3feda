#ifndef MINSINK_ENVELOPE_H_
#define MINSINK_ENVELOPE_H_

#include <cstdint>
#include <vector>

#include "minsink/kernels.h"

namespace minsink {

// Upper envelope of two-piece time functions over [0, total]. Pieces are
// half-open (b_p, b_{p+1}] for rightward families; every piece is linear and
// stored as value(z) = (z - t) / c + o (zero pieces use c = inf, o = 0).
// Leftward families are stored reflected (z -> total - z) and flipped back by
// the query methods.
class Envelope {
 public:
  Envelope() = default;

  int NumPieces() const { return static_cast<int>(id_.size()); }
  double Total() const { return total_; }
  bool Leftward() const { return leftward_; }

  // Query surface in caller coordinates.
  int Owner(double z) const;
  double Value(double z) const;
  double PrefixIntegral(double z) const;
  // Breakpoints b_1 = 0 < ... < b_N = total in caller coordinates.
  std::vector<double> Breakpoints() const;
  std::vector<int> Owners() const;
  std::vector<double> BreakpointIntegrals() const;

  // Raw access to the rightward representation.
  const std::vector<double>& bp() const { return bp_; }
  int PieceAt(double z) const;       // bp[p] < z <= bp[p+1]
  int PieceRightOf(double z) const;  // bp[p] <= z < bp[p+1]
  int PieceId(int p) const { return id_[p]; }
  double PieceValue(int p, double z) const {
    return (z - t_[p]) / c_[p] + o_[p];
  }
  double PieceSlope(int p) const { return 1.0 / c_[p]; }
  bool PieceIsZero(int p) const { return c_[p] == kInf; }
  // Integral of the envelope over [0, z] with z inside piece p.
  double IntegralInPiece(int p, double z) const {
    const double a = bp_[p];
    return integ_[p] + 0.5 * (z - a) * (PieceValue(p, a) + PieceValue(p, z));
  }
  // Every line vanishes at or left of its threshold, so the value at 0 is 0.
  double RawValue(double z) const {
    return z <= 0.0 ? 0.0 : PieceValue(PieceAt(z), z);
  }
  double RawIntegral(double z) const;

  size_t MemoryBytes() const;

  void Serialize(std::vector<char>& out) const;
  static Envelope Deserialize(const char*& in);

 private:
  friend Envelope BuildUpperEnvelope(const std::vector<ThetaLine>& lines,
                                     double total);

  static constexpr double kInf = __builtin_inf();

  double total_ = 0.0;
  bool leftward_ = false;
  std::vector<double> bp_;     // N + 1 entries
  std::vector<double> t_, c_, o_, integ_;
  std::vector<int32_t> id_;
};

// Lines must share one direction; ties on an interval go to the smaller id.
Envelope BuildUpperEnvelope(const std::vector<ThetaLine>& lines, double total);

}  // namespace minsink

#endif  // MINSINK_ENVELOPE_H_
