#ifndef MINSINK_ORACLE_H_
#define MINSINK_ORACLE_H_

#include <vector>

#include "minsink/optquery.h"
#include "minsink/pathnet.h"
#include "minsink/planner.h"

namespace minsink {

// Piecewise linear function on [x_0, x_m] with independent point values at
// the breakpoints, so either continuity convention is representable.
class PiecewiseLinearFn {
 public:
  PiecewiseLinearFn() = default;
  static PiecewiseLinearFn Constant(double lo, double hi, double value);

  const std::vector<double>& breakpoints() const { return x_; }
  double lo() const { return x_.front(); }
  double hi() const { return x_.back(); }
  int NumPieces() const { return static_cast<int>(start_.size()); }

  double operator()(double z) const;
  // Limits from the right (z < hi) and from the left (z > lo).
  double RightLimit(double z) const;
  double LeftLimit(double z) const;
  double Integral(double a, double b) const;

  // Same domain required.
  static PiecewiseLinearFn Max(const PiecewiseLinearFn& f,
                               const PiecewiseLinearFn& g);
  static PiecewiseLinearFn Difference(const PiecewiseLinearFn& f,
                                      const PiecewiseLinearFn& g);

  // Piece k covers (x_k, x_{k+1}); value start_k + slope_k * (z - x_k).
  void AddPiece(double x_end, double start, double slope, double at_end);
  void SetOrigin(double x0, double at0);

 private:
  int PieceOf(double z) const;  // piece containing z in its open interior
  static PiecewiseLinearFn Combine(const PiecewiseLinearFn& f,
                                   const PiecewiseLinearFn& g, bool max);

  std::vector<double> x_, at_, start_, slope_;
};

enum class Side { kPlus, kMinus };

// Reference implementations built directly from the network; capacities are
// scanned, not range-queried.
class NaiveOracle {
 public:
  explicit NaiveOracle(const PathNetwork& net);

  int n() const { return n_; }
  double W(int i) const { return W_[i]; }
  double Total() const { return W_[n_]; }

  double Theta(int i, Side side, double z) const;
  const PiecewiseLinearFn& ThetaFn(int i, Side side);
  double Phi(int i, int j, double z);
  OptResult Opt(int i, int j, Model model);
  double LinkWeight(int i, int j, Model model);
  SinkPlan KSink(int k, Model model, const std::vector<double>* costs = nullptr);

 private:
  double Cap(int i, int j) const;  // min c_i..c_{j-1}
  double Dist(int i, int j) const { return L_[j] - L_[i]; }

  PathNetwork net_;
  int n_;
  double tau_;
  std::vector<double> W_, L_;
  std::vector<PiecewiseLinearFn> plus_, minus_;
  std::vector<bool> plus_built_, minus_built_;
};

double NaiveTheta(const PathNetwork& net, int i, Side side, double z);
OptResult NaiveOpt(const PathNetwork& net, int i, int j, Model model);
SinkPlan NaiveKSink(const PathNetwork& net, int k, Model model,
                    const std::vector<double>* costs = nullptr);

struct MongeReport {
  bool pass = true;
  double worst_violation = 0.0;  // max of lhs - rhs; <= 0 when Monge holds
  int worst_i = -1, worst_j = -1;
  long long checks = 0;
};

// w(i,j) + w(i+1,j+1) <= w(i+1,j) + w(i,j+1) over 0 <= i, i+2 <= j <= n.
MongeReport AuditMonge(const PathNetwork& net, Model model,
                       double tolerance = 1e-9);
MongeReport AuditMonge(const std::vector<std::vector<double>>& weights,
                       double tolerance = 1e-9);

// Time-stepped fluid model of supply right of v_i moving to v_i; returns the
// time the first z - W_i units have arrived.
double SimulateCompletion(const PathNetwork& net, int i, double z, double dt);

}  // namespace minsink

#endif  // MINSINK_ORACLE_H_
