#include "minsink/io.h"

#include <fstream>
#include <random>
#include <stdexcept>

namespace minsink {

using nlohmann::json;

namespace {

std::vector<double> NumberArray(const json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw std::invalid_argument(std::string("missing field '") + key + "'");
  }
  const json& arr = doc.at(key);
  if (!arr.is_array()) {
    throw std::invalid_argument(std::string("field '") + key +
                                "' must be an array");
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const json& v : arr) {
    if (!v.is_number()) {
      throw std::invalid_argument(std::string("non-numeric entry in '") + key +
                                  "'");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

json ReadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace

PathNetwork InstanceFromJson(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("instance must be an object");
  PathNetwork net;
  net.tau = doc.contains("tau") ? doc.at("tau").get<double>() : 1.0;
  net.weights = NumberArray(doc, "weights");
  net.n = static_cast<int>(net.weights.size());
  net.lengths = net.n > 1 || doc.contains("lengths")
                    ? NumberArray(doc, "lengths")
                    : std::vector<double>{};
  if (doc.contains("uniform_capacity")) {
    if (doc.contains("capacities")) {
      throw std::invalid_argument(
          "give either 'capacities' or 'uniform_capacity', not both");
    }
    const double c = doc.at("uniform_capacity").get<double>();
    net.capacities.assign(net.n > 0 ? net.n - 1 : 0, c);
    if (!(c > 0.0)) throw std::invalid_argument("uniform_capacity must be > 0");
  } else {
    net.capacities = net.n > 1 || doc.contains("capacities")
                         ? NumberArray(doc, "capacities")
                         : std::vector<double>{};
  }
  net.Validate();
  return net;
}

json InstanceToJson(const PathNetwork& net) {
  json doc;
  doc["tau"] = net.tau;
  doc["weights"] = net.weights;
  doc["lengths"] = net.lengths;
  if (net.n > 1 && net.HasUniformCapacity()) {
    doc["uniform_capacity"] = net.capacities.front();
  } else {
    doc["capacities"] = net.capacities;
  }
  return doc;
}

PathNetwork LoadInstance(const std::string& path) {
  try {
    return InstanceFromJson(ReadJson(path));
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void SaveInstance(const PathNetwork& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << InstanceToJson(net).dump() << "\n";
}

json PlanToJson(const SinkPlan& plan) {
  json doc;
  doc["sinks"] = plan.sinks;
  doc["dividers"] = plan.dividers;
  doc["aggregate_time"] = plan.aggregate_time;
  doc["model"] = ModelName(plan.model);
  if (plan.facility_cost) {
    doc["facility_cost"] = *plan.facility_cost;
    doc["objective"] = plan.Objective();
  }
  return doc;
}

SinkPlan PlanFromJson(const json& doc) {
  try {
    SinkPlan plan;
    plan.sinks = doc.at("sinks").get<std::vector<int>>();
    if (doc.contains("dividers")) {
      plan.dividers = doc.at("dividers").get<std::vector<double>>();
    }
    plan.aggregate_time = doc.at("aggregate_time").get<double>();
    if (doc.contains("model") &&
        !ParseModel(doc.at("model").get<std::string>(), plan.model)) {
      throw std::invalid_argument("unknown model in plan");
    }
    if (doc.contains("facility_cost")) {
      plan.facility_cost = doc.at("facility_cost").get<double>();
    }
    return plan;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad plan: ") + e.what());
  }
}

std::vector<double> LoadCosts(const std::string& path) {
  const json doc = ReadJson(path);
  if (doc.is_array()) {
    json wrapped;
    wrapped["costs"] = doc;
    return NumberArray(wrapped, "costs");
  }
  return NumberArray(doc, "costs");
}

PathNetwork GenerateInstance(int n, uint64_t seed, const GenOptions& options) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (options.lo < 1 || options.hi < options.lo) {
    throw std::invalid_argument("bad value range");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(options.lo, options.hi);
  PathNetwork net;
  net.n = n;
  net.tau = options.tau;
  net.weights.resize(n);
  net.lengths.resize(n - 1);
  net.capacities.resize(n - 1);
  for (int i = 0; i < n; ++i) net.weights[i] = pick(rng);
  for (int i = 0; i + 1 < n; ++i) net.lengths[i] = pick(rng);
  for (int i = 0; i + 1 < n; ++i) {
    net.capacities[i] = options.uniform ? options.uniform_capacity : pick(rng);
  }
  net.Validate();
  return net;
}

}  // namespace minsink
