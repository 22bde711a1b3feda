#include "minsink/planner.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace minsink {

namespace {

// Entry A[j][i] = prev[i] + w(i, j) of one layer, memoized for the layer.
class LayerMatrix {
 public:
  LayerMatrix(const WeightFn& weight, const std::vector<double>& prev)
      : weight_(weight), prev_(prev) {}

  double At(int j, int i) {
    if (i >= j || std::isinf(prev_[i])) return kInfiniteWeight;
    const uint64_t key = (static_cast<uint64_t>(j) << 32) | static_cast<uint32_t>(i);
    const auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const double v = prev_[i] + weight_(i, j);
    memo_.emplace(key, v);
    return v;
  }

  // Column b (> a) is at least as good as column a in row j.
  bool NotWorse(int j, int b, int a) {
    const double vb = At(j, b);
    if (std::isinf(vb)) return false;
    const double va = At(j, a);
    return std::isinf(va) || vb <= va;
  }

  void Clear() { memo_.clear(); }

 private:
  const WeightFn& weight_;
  const std::vector<double>& prev_;
  std::unordered_map<uint64_t, double> memo_;
};

void DivideConquer(LayerMatrix& a, int jlo, int jhi, int ilo, int ihi,
                   std::vector<int>& arg) {
  if (jlo > jhi) return;
  const int mid = (jlo + jhi) / 2;
  int best = ilo;
  for (int i = ilo; i <= std::min(ihi, mid - 1); ++i) {
    if (i == ilo || a.NotWorse(mid, i, best)) best = i;
  }
  arg[mid] = best;
  DivideConquer(a, jlo, mid - 1, ilo, best, arg);
  DivideConquer(a, mid + 1, jhi, best, ihi, arg);
}

void Smawk(LayerMatrix& a, const std::vector<int>& rows,
           const std::vector<int>& cols, std::vector<int>& arg) {
  if (rows.empty()) return;
  std::vector<int> kept;
  kept.reserve(rows.size());
  for (int c : cols) {
    while (!kept.empty()) {
      const int r = rows[kept.size() - 1];
      if (a.NotWorse(r, c, kept.back())) {
        kept.pop_back();
      } else {
        break;
      }
    }
    if (kept.size() < rows.size()) kept.push_back(c);
  }
  std::vector<int> odd;
  odd.reserve(rows.size() / 2);
  for (size_t k = 1; k < rows.size(); k += 2) odd.push_back(rows[k]);
  Smawk(a, odd, kept, arg);
  size_t c = 0;
  for (size_t k = 0; k < rows.size(); k += 2) {
    const int r = rows[k];
    const int stop = k + 1 < rows.size() ? arg[rows[k + 1]] : kept.back();
    int best = kept[c];
    while (true) {
      if (kept[c] != best && a.NotWorse(r, kept[c], best)) best = kept[c];
      if (kept[c] == stop) break;
      ++c;
    }
    arg[r] = best;
  }
}

}  // namespace

LinkPath MongeLayeredDp(const WeightFn& weight, int n, int links,
                        LinkEngine engine) {
  if (links < 1) throw std::invalid_argument("need at least one link");
  if (links > n + 1) throw std::out_of_range("more links than nodes");
  const int target = n + 1;
  // cost[t][j]: best path 0 -> j with t links.
  std::vector<double> cost(target + 1, kInfiniteWeight);
  std::vector<std::vector<int>> parent(links + 1);
  for (int j = 1; j <= target; ++j) cost[j] = weight(0, j);
  parent[1].assign(target + 1, 0);
  for (int t = 2; t <= links; ++t) {
    const bool last = t == links;
    const int jlo = last ? target : t;
    const int jhi = target;
    std::vector<int> arg(target + 1, -1);
    std::vector<double> prev = cost;
    LayerMatrix a(weight, prev);
    const int ilo = t - 1;
    if (last) {
      int best = ilo;
      for (int i = ilo; i < target; ++i) {
        if (i == ilo || a.NotWorse(target, i, best)) best = i;
      }
      arg[target] = best;
    } else if (engine == LinkEngine::kDivideConquer) {
      DivideConquer(a, jlo, jhi, ilo, jhi - 1, arg);
    } else {
      std::vector<int> rows, cols;
      for (int j = jlo; j <= jhi; ++j) rows.push_back(j);
      for (int i = ilo; i < jhi; ++i) cols.push_back(i);
      Smawk(a, rows, cols, arg);
    }
    std::fill(cost.begin(), cost.end(), kInfiniteWeight);
    for (int j = jlo; j <= jhi; ++j) cost[j] = a.At(j, arg[j]);
    parent[t] = std::move(arg);
  }
  LinkPath path;
  path.value = cost[target];
  path.nodes.assign(links + 1, 0);
  int j = target;
  for (int t = links; t >= 1; --t) {
    path.nodes[t] = j;
    j = parent[t][j];
  }
  path.nodes[0] = 0;
  return path;
}

LinkPath ExhaustiveLayeredDp(const WeightFn& weight, int n, int links) {
  if (links < 1 || links > n + 1) throw std::out_of_range("bad link count");
  const int target = n + 1;
  std::vector<std::vector<double>> w(target + 1,
                                     std::vector<double>(target + 1));
  for (int i = 0; i <= target; ++i) {
    for (int j = i + 1; j <= target; ++j) w[i][j] = weight(i, j);
  }
  std::vector<std::vector<double>> cost(
      links + 1, std::vector<double>(target + 1, kInfiniteWeight));
  std::vector<std::vector<int>> parent(links + 1,
                                       std::vector<int>(target + 1, -1));
  cost[0][0] = 0.0;
  for (int t = 1; t <= links; ++t) {
    for (int j = 1; j <= target; ++j) {
      for (int i = 0; i < j; ++i) {
        if (std::isinf(cost[t - 1][i]) || std::isinf(w[i][j])) continue;
        const double v = cost[t - 1][i] + w[i][j];
        if (parent[t][j] < 0 || v <= cost[t][j]) {
          cost[t][j] = v;
          parent[t][j] = i;
        }
      }
    }
  }
  LinkPath path;
  path.value = cost[links][target];
  path.nodes.assign(links + 1, 0);
  int j = target;
  for (int t = links; t >= 1; --t) {
    path.nodes[t] = j;
    j = parent[t][j];
  }
  return path;
}

SinkPlan ReconstructDividers(LinkWeights& weights,
                             const std::vector<int>& sinks) {
  const int n = weights.tree().n();
  if (sinks.empty()) throw std::invalid_argument("no sinks");
  for (size_t s = 0; s < sinks.size(); ++s) {
    if (sinks[s] < 1 || sinks[s] > n) throw std::out_of_range("sink index");
    if (s > 0 && sinks[s] <= sinks[s - 1]) {
      throw std::invalid_argument("sinks must be strictly increasing");
    }
  }
  SinkPlan plan;
  plan.model = weights.model();
  plan.sinks = sinks;
  double at = weights.Weight(0, sinks.front());
  for (size_t s = 0; s + 1 < sinks.size(); ++s) {
    const OptResult r = weights.Evaluate(sinks[s], sinks[s + 1]);
    plan.dividers.push_back(r.z_star);
    at += r.value;
  }
  at += weights.Weight(sinks.back(), n + 1);
  plan.aggregate_time = at;
  return plan;
}

SinkPlan ReconstructDividers(const CueTree& tree, const std::vector<int>& sinks,
                             Model model) {
  LinkWeights weights(tree, model);
  return ReconstructDividers(weights, sinks);
}

SinkPlan SolveKSink(const CueTree& tree, int k, Model model,
                    const std::vector<double>* costs,
                    const SolveOptions& options) {
  const int n = tree.n();
  if (k < 1 || k > n) throw std::out_of_range("k must be in [1, n]");
  if (costs != nullptr && static_cast<int>(costs->size()) != n) {
    throw std::invalid_argument("costs need one entry per vertex");
  }
  LinkWeights weights(tree, model, options.path);
  WeightFn fn = [&](int i, int j) {
    double w = weights.Weight(i, j);
    if (costs != nullptr && i >= 1) w += (*costs)[i - 1];
    return w;
  };
  const LinkPath path = MongeLayeredDp(fn, n, k + 1, options.engine);
  std::vector<int> sinks(path.nodes.begin() + 1, path.nodes.end() - 1);
  SinkPlan plan = ReconstructDividers(weights, sinks);
  if (costs != nullptr) {
    double total = 0.0;
    for (int s : sinks) total += (*costs)[s - 1];
    plan.facility_cost = total;
  }
  plan.weight_queries = weights.queries();
  return plan;
}

}  // namespace minsink
