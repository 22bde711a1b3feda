#ifndef MINSINK_PLANNER_H_
#define MINSINK_PLANNER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "minsink/cuetree.h"
#include "minsink/optquery.h"

namespace minsink {

struct SinkPlan {
  std::vector<int> sinks;         // 1-based, strictly increasing
  std::vector<double> dividers;   // k - 1 supply values
  double aggregate_time = 0.0;
  Model model = Model::kNonConfluent;
  std::optional<double> facility_cost;
  int64_t weight_queries = 0;

  double Objective() const {
    return aggregate_time + facility_cost.value_or(0.0);
  }
};

// Weight of the link i -> j in the DAG over 0..n+1; +inf is allowed.
using WeightFn = std::function<double(int, int)>;

enum class LinkEngine {
  kDivideConquer,  // per-layer monotone-argmin divide and conquer
  kSmawk,          // per-layer SMAWK row minima
};

struct LinkPath {
  std::vector<int> nodes;  // 0 = x_0 < x_1 < ... < x_{links} = n + 1
  double value = 0.0;
};

// Minimum weight path 0 -> n+1 with exactly `links` links. Exact when the
// weights are concave Monge; ties go to the larger predecessor.
LinkPath MongeLayeredDp(const WeightFn& weight, int n, int links,
                        LinkEngine engine = LinkEngine::kSmawk);

// O(links * n^2) reference used by tests.
LinkPath ExhaustiveLayeredDp(const WeightFn& weight, int n, int links);

struct SolveOptions {
  LinkEngine engine = LinkEngine::kSmawk;
  QueryPath path = QueryPath::kAuto;
};

// costs, when given, holds lambda_1..lambda_n.
SinkPlan SolveKSink(const CueTree& tree, int k, Model model,
                    const std::vector<double>* costs = nullptr,
                    const SolveOptions& options = {});

// Dividers and aggregate time for a fixed sink set.
SinkPlan ReconstructDividers(const CueTree& tree, const std::vector<int>& sinks,
                             Model model);
SinkPlan ReconstructDividers(LinkWeights& weights,
                             const std::vector<int>& sinks);

}  // namespace minsink

#endif  // MINSINK_PLANNER_H_
