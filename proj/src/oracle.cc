#include "minsink/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace minsink {

PiecewiseLinearFn PiecewiseLinearFn::Constant(double lo, double hi,
                                              double value) {
  PiecewiseLinearFn f;
  f.SetOrigin(lo, value);
  f.AddPiece(hi, value, 0.0, value);
  return f;
}

void PiecewiseLinearFn::SetOrigin(double x0, double at0) {
  x_.assign(1, x0);
  at_.assign(1, at0);
  start_.clear();
  slope_.clear();
}

void PiecewiseLinearFn::AddPiece(double x_end, double start, double slope,
                                 double at_end) {
  if (x_.empty()) throw std::logic_error("origin not set");
  if (!(x_end > x_.back())) return;  // degenerate piece
  x_.push_back(x_end);
  at_.push_back(at_end);
  start_.push_back(start);
  slope_.push_back(slope);
}

int PiecewiseLinearFn::PieceOf(double z) const {
  int k = static_cast<int>(std::upper_bound(x_.begin(), x_.end(), z) -
                           x_.begin()) - 1;
  return std::clamp(k, 0, NumPieces() - 1);
}

double PiecewiseLinearFn::operator()(double z) const {
  const auto it = std::lower_bound(x_.begin(), x_.end(), z);
  if (it != x_.end() && *it == z) return at_[it - x_.begin()];
  const int k = PieceOf(z);
  return start_[k] + slope_[k] * (z - x_[k]);
}

double PiecewiseLinearFn::RightLimit(double z) const {
  const int k = PieceOf(z);
  return start_[k] + slope_[k] * (z - x_[k]);
}

double PiecewiseLinearFn::LeftLimit(double z) const {
  int k = static_cast<int>(std::lower_bound(x_.begin(), x_.end(), z) -
                           x_.begin()) - 1;
  k = std::clamp(k, 0, NumPieces() - 1);
  return start_[k] + slope_[k] * (z - x_[k]);
}

double PiecewiseLinearFn::Integral(double a, double b) const {
  if (b < a) return -Integral(b, a);
  double sum = 0.0;
  for (int k = 0; k < NumPieces(); ++k) {
    const double u = std::max(a, x_[k]);
    const double v = std::min(b, x_[k + 1]);
    if (v <= u) continue;
    const double mid = 0.5 * (u + v);
    sum += (v - u) * (start_[k] + slope_[k] * (mid - x_[k]));
  }
  return sum;
}

PiecewiseLinearFn PiecewiseLinearFn::Combine(const PiecewiseLinearFn& f,
                                             const PiecewiseLinearFn& g,
                                             bool max) {
  std::vector<double> xs(f.x_);
  xs.insert(xs.end(), g.x_.begin(), g.x_.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  PiecewiseLinearFn out;
  const double x0 = xs.front();
  out.SetOrigin(x0, max ? std::max(f(x0), g(x0)) : f(x0) - g(x0));
  for (size_t p = 0; p + 1 < xs.size(); ++p) {
    const double u = xs[p], v = xs[p + 1];
    const int kf = f.PieceOf(0.5 * (u + v));
    const int kg = g.PieceOf(0.5 * (u + v));
    const double fs = f.slope_[kf], gs = g.slope_[kg];
    const double fa = f.start_[kf] + fs * (u - f.x_[kf]);
    const double ga = g.start_[kg] + gs * (u - g.x_[kg]);
    const double fb = fa + fs * (v - u), gb = ga + gs * (v - u);
    if (!max) {
      out.AddPiece(v, fa - ga, fs - gs, f(v) - g(v));
      continue;
    }
    const double da = fa - ga, db = fb - gb;
    if (da * db < 0.0) {
      const double xc = u + (v - u) * da / (da - db);
      const bool f_first = da > 0.0;
      const double vc = f_first ? fa + fs * (xc - u) : ga + gs * (xc - u);
      out.AddPiece(xc, f_first ? fa : ga, f_first ? fs : gs, vc);
      out.AddPiece(v, vc, f_first ? gs : fs, std::max(f(v), g(v)));
    } else if (da + db >= 0.0) {
      out.AddPiece(v, fa, fs, std::max(f(v), g(v)));
    } else {
      out.AddPiece(v, ga, gs, std::max(f(v), g(v)));
    }
  }
  return out;
}

PiecewiseLinearFn PiecewiseLinearFn::Max(const PiecewiseLinearFn& f,
                                         const PiecewiseLinearFn& g) {
  return Combine(f, g, true);
}

PiecewiseLinearFn PiecewiseLinearFn::Difference(const PiecewiseLinearFn& f,
                                                const PiecewiseLinearFn& g) {
  return Combine(f, g, false);
}

NaiveOracle::NaiveOracle(const PathNetwork& net)
    : net_(net), n_(net.n), tau_(net.tau) {
  net_.Validate();
  W_.assign(n_ + 1, 0.0);
  L_.assign(n_ + 1, 0.0);
  for (int h = 1; h <= n_; ++h) W_[h] = W_[h - 1] + net_.weights[h - 1];
  for (int h = 2; h <= n_; ++h) L_[h] = L_[h - 1] + net_.lengths[h - 2];
  plus_.resize(n_ + 1);
  minus_.resize(n_ + 1);
  plus_built_.assign(n_ + 1, false);
  minus_built_.assign(n_ + 1, false);
}

double NaiveOracle::Cap(int i, int j) const {
  double c = std::numeric_limits<double>::infinity();
  for (int h = i; h < j; ++h) c = std::min(c, net_.capacities[h - 1]);
  return c;
}

double NaiveOracle::Theta(int i, Side side, double z) const {
  if (i < 1 || i > n_) throw std::out_of_range("vertex out of range");
  double best = 0.0;
  if (side == Side::kPlus) {
    for (int j = i + 1; j <= n_; ++j) {
      if (z > W_[j - 1]) {
        best = std::max(best, (z - W_[j - 1]) / Cap(i, j) + tau_ * Dist(i, j));
      }
    }
  } else {
    for (int h = 1; h < i; ++h) {
      if (z < W_[h]) {
        best = std::max(best, (W_[h] - z) / Cap(h, i) + tau_ * Dist(h, i));
      }
    }
  }
  return best;
}

const PiecewiseLinearFn& NaiveOracle::ThetaFn(int i, Side side) {
  if (i < 1 || i > n_) throw std::out_of_range("vertex out of range");
  const double total = Total();
  if (side == Side::kPlus) {
    if (!plus_built_[i]) {
      PiecewiseLinearFn f = PiecewiseLinearFn::Constant(0.0, total, 0.0);
      for (int j = i + 1; j <= n_; ++j) {
        const double thr = W_[j - 1], cap = Cap(i, j);
        const double off = tau_ * Dist(i, j);
        PiecewiseLinearFn line;
        line.SetOrigin(0.0, 0.0);
        line.AddPiece(thr, 0.0, 0.0, 0.0);
        line.AddPiece(total, off, 1.0 / cap, (total - thr) / cap + off);
        f = PiecewiseLinearFn::Max(f, line);
      }
      plus_[i] = std::move(f);
      plus_built_[i] = true;
    }
    return plus_[i];
  }
  if (!minus_built_[i]) {
    PiecewiseLinearFn f = PiecewiseLinearFn::Constant(0.0, total, 0.0);
    for (int h = 1; h < i; ++h) {
      const double thr = W_[h], cap = Cap(h, i);
      const double off = tau_ * Dist(h, i);
      PiecewiseLinearFn line;
      line.SetOrigin(0.0, thr / cap + off);
      line.AddPiece(thr, thr / cap + off, -1.0 / cap, 0.0);
      line.AddPiece(total, 0.0, 0.0, 0.0);
      f = PiecewiseLinearFn::Max(f, line);
    }
    minus_[i] = std::move(f);
    minus_built_[i] = true;
  }
  return minus_[i];
}

double NaiveOracle::Phi(int i, int j, double z) {
  return ThetaFn(i, Side::kPlus).Integral(0.0, z) +
         ThetaFn(j, Side::kMinus).Integral(z, Total());
}

OptResult NaiveOracle::Opt(int i, int j, Model model) {
  if (i < 1 || j > n_ || i >= j) throw std::out_of_range("need 1 <= i < j <= n");
  const double lo = W_[i], hi = W_[j - 1];
  OptResult r;
  r.model = model;
  if (model == Model::kConfluent) {
    r.z_star = lo;
    r.value = Phi(i, j, lo);
    for (int h = i + 1; h <= j - 1; ++h) {
      const double v = Phi(i, j, W_[h]);
      if (v < r.value) {
        r.value = v;
        r.z_star = W_[h];
      }
    }
    return r;
  }
  // First z with F(z+) >= 0, F = theta^{i,+} - theta^{j,-}.
  const PiecewiseLinearFn f = PiecewiseLinearFn::Difference(
      ThetaFn(i, Side::kPlus), ThetaFn(j, Side::kMinus));
  double z = hi;
  const std::vector<double>& xs = f.breakpoints();
  for (size_t k = 0; k + 1 < xs.size(); ++k) {
    const double u = std::max(xs[k], lo), v = std::min(xs[k + 1], hi);
    if (v <= u) continue;
    const double a = f.RightLimit(u), b = f.LeftLimit(v);
    if (a >= 0.0) {
      z = u;
      break;
    }
    if (b > 0.0) {
      z = u + (v - u) * (-a) / (b - a);
      break;
    }
  }
  r.z_star = z;
  r.value = Phi(i, j, z);
  return r;
}

double NaiveOracle::LinkWeight(int i, int j, Model model) {
  if (i < 0 || j > n_ + 1 || i >= j) throw std::out_of_range("bad link");
  if (i == 0 && j == n_ + 1) return std::numeric_limits<double>::infinity();
  if (i == 0) return ThetaFn(j, Side::kMinus).Integral(0.0, Total());
  if (j == n_ + 1) return ThetaFn(i, Side::kPlus).Integral(0.0, Total());
  return Opt(i, j, model).value;
}

SinkPlan NaiveOracle::KSink(int k, Model model,
                            const std::vector<double>* costs) {
  if (k < 1 || k > n_) throw std::out_of_range("k must be in [1, n]");
  const int target = n_ + 1;
  std::vector<std::vector<double>> w(target + 1,
                                     std::vector<double>(target + 1, 0.0));
  for (int i = 0; i < target; ++i) {
    for (int j = i + 1; j <= target; ++j) {
      w[i][j] = LinkWeight(i, j, model);
      if (costs != nullptr && i >= 1) w[i][j] += (*costs)[i - 1];
    }
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> cost(k + 2, std::vector<double>(target + 1, inf));
  std::vector<std::vector<int>> parent(k + 2, std::vector<int>(target + 1, -1));
  cost[0][0] = 0.0;
  for (int t = 1; t <= k + 1; ++t) {
    for (int j = 1; j <= target; ++j) {
      for (int i = 0; i < j; ++i) {
        const double v = cost[t - 1][i] + w[i][j];
        if (std::isinf(v)) continue;
        if (parent[t][j] < 0 || v <= cost[t][j]) {
          cost[t][j] = v;
          parent[t][j] = i;
        }
      }
    }
  }
  std::vector<int> sinks(k);
  int j = parent[k + 1][target];
  for (int t = k; t >= 1; --t) {
    sinks[t - 1] = j;
    j = parent[t][j];
  }
  SinkPlan plan;
  plan.model = model;
  plan.sinks = sinks;
  double at = LinkWeight(0, sinks.front(), model) +
              LinkWeight(sinks.back(), target, model);
  for (int s = 0; s + 1 < k; ++s) {
    const OptResult r = Opt(sinks[s], sinks[s + 1], model);
    plan.dividers.push_back(r.z_star);
    at += r.value;
  }
  plan.aggregate_time = at;
  if (costs != nullptr) {
    double total = 0.0;
    for (int s : sinks) total += (*costs)[s - 1];
    plan.facility_cost = total;
  }
  return plan;
}

double NaiveTheta(const PathNetwork& net, int i, Side side, double z) {
  return NaiveOracle(net).Theta(i, side, z);
}

OptResult NaiveOpt(const PathNetwork& net, int i, int j, Model model) {
  return NaiveOracle(net).Opt(i, j, model);
}

SinkPlan NaiveKSink(const PathNetwork& net, int k, Model model,
                    const std::vector<double>* costs) {
  return NaiveOracle(net).KSink(k, model, costs);
}

MongeReport AuditMonge(const std::vector<std::vector<double>>& w,
                       double tolerance) {
  MongeReport report;
  const int n = static_cast<int>(w.size()) - 2;
  for (int i = 0; i + 2 <= n; ++i) {
    for (int j = i + 2; j <= n; ++j) {
      ++report.checks;
      const double rhs = w[i + 1][j] + w[i][j + 1];
      if (std::isinf(rhs)) continue;
      const double lhs = w[i][j] + w[i + 1][j + 1];
      const double violation = lhs - rhs;
      if (report.worst_i < 0 || violation > report.worst_violation) {
        report.worst_violation = violation;
        report.worst_i = i;
        report.worst_j = j;
      }
      if (violation > tolerance * std::max(1.0, std::abs(rhs))) {
        report.pass = false;
      }
    }
  }
  return report;
}

MongeReport AuditMonge(const PathNetwork& net, Model model, double tolerance) {
  NaiveOracle oracle(net);
  const int target = net.n + 1;
  std::vector<std::vector<double>> w(target + 1,
                                     std::vector<double>(target + 1, 0.0));
  for (int i = 0; i < target; ++i) {
    for (int j = i + 1; j <= target; ++j) w[i][j] = oracle.LinkWeight(i, j, model);
  }
  return AuditMonge(w, tolerance);
}

double SimulateCompletion(const PathNetwork& net, int i, double z, double dt) {
  net.Validate();
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (i < 1 || i > net.n) throw std::out_of_range("vertex out of range");
  double w_i = 0.0, total = 0.0;
  for (int h = 1; h <= net.n; ++h) {
    total += net.weights[h - 1];
    if (h <= i) w_i = total;
  }
  if (z <= w_i) return 0.0;
  const double target = std::min(z, total) - w_i;
  const int n = net.n;
  // Edge e_h carries flow from v_{h+1} to v_h through a delay line.
  std::vector<std::vector<double>> ring(n);
  std::vector<double> queue(n + 1, 0.0);
  double horizon = 0.0, min_cap = std::numeric_limits<double>::infinity();
  for (int h = i; h < n; ++h) {
    const double delay = net.tau * net.lengths[h - 1];
    ring[h].assign(std::max<long long>(1, std::llround(delay / dt)), 0.0);
    horizon += delay;
    min_cap = std::min(min_cap, net.capacities[h - 1]);
  }
  for (int h = i + 1; h <= n; ++h) queue[h] = net.weights[h - 1];
  horizon += total / min_cap;
  const long long max_steps = static_cast<long long>(2.0 * horizon / dt) + 16;
  double arrived = 0.0;
  for (long long s = 0; s < max_steps; ++s) {
    for (int h = i; h < n; ++h) {
      double& slot = ring[h][s % ring[h].size()];
      const double a = slot;
      slot = 0.0;
      if (h == i) {
        if (a > 0.0 && arrived + a >= target - 1e-9 * target) {
          const double frac = std::clamp((target - arrived) / a, 0.0, 1.0);
          return (static_cast<double>(s) + frac) * dt;
        }
        arrived += a;
      } else {
        queue[h] += a;
      }
    }
    for (int h = i + 1; h <= n; ++h) {
      const double out = std::min(queue[h], net.capacities[h - 2] * dt);
      queue[h] -= out;
      ring[h - 1][s % ring[h - 1].size()] += out;
    }
  }
  throw std::runtime_error("simulation did not finish");
}

}  // namespace minsink
