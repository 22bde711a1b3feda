#ifndef MINSINK_IO_H_
#define MINSINK_IO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "minsink/pathnet.h"
#include "minsink/planner.h"

namespace minsink {

// Malformed documents raise std::invalid_argument.
PathNetwork InstanceFromJson(const nlohmann::json& doc);
nlohmann::json InstanceToJson(const PathNetwork& net);
PathNetwork LoadInstance(const std::string& path);
void SaveInstance(const PathNetwork& net, const std::string& path);

nlohmann::json PlanToJson(const SinkPlan& plan);
SinkPlan PlanFromJson(const nlohmann::json& doc);

// Accepts a JSON array or {"costs": [...]}.
std::vector<double> LoadCosts(const std::string& path);

struct GenOptions {
  int lo = 1, hi = 8;  // integer range for weights, lengths, capacities
  double tau = 1.0;
  bool uniform = false;
  double uniform_capacity = 1.0;
};

PathNetwork GenerateInstance(int n, uint64_t seed, const GenOptions& options = {});

}  // namespace minsink

#endif  // MINSINK_IO_H_
