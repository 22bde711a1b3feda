// Python bindings: networks, solving, link weights and the reference oracle.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <string>

#include "minsink/io.h"
#include "minsink/oracle.h"
#include "minsink/planner.h"

namespace py = pybind11;
using namespace minsink;

namespace {

Model ToModel(const std::string& name) {
  Model m;
  if (!ParseModel(name, m)) throw py::value_error("unknown model: " + name);
  return m;
}

py::dict PlanDict(const SinkPlan& plan) {
  py::dict d;
  d["sinks"] = plan.sinks;
  d["dividers"] = plan.dividers;
  d["aggregate_time"] = plan.aggregate_time;
  d["model"] = ModelName(plan.model);
  if (plan.facility_cost) {
    d["facility_cost"] = *plan.facility_cost;
    d["objective"] = plan.Objective();
  }
  return d;
}

PathNetwork MakeNetwork(std::vector<double> weights, std::vector<double> lengths,
                        std::vector<double> capacities, double tau) {
  PathNetwork net;
  net.n = static_cast<int>(weights.size());
  net.weights = std::move(weights);
  net.lengths = std::move(lengths);
  net.capacities = std::move(capacities);
  net.tau = tau;
  net.Validate();
  return net;
}

}  // namespace

PYBIND11_MODULE(minsink, m) {
  m.doc() = "Minsum k-sink location on dynamic flow path networks";

  py::class_<PathNetwork>(m, "Network")
      .def(py::init(&MakeNetwork), py::arg("weights"), py::arg("lengths"),
           py::arg("capacities"), py::arg("tau") = 1.0)
      .def_readonly("n", &PathNetwork::n)
      .def_readonly("weights", &PathNetwork::weights)
      .def_readonly("lengths", &PathNetwork::lengths)
      .def_readonly("capacities", &PathNetwork::capacities)
      .def_readonly("tau", &PathNetwork::tau)
      .def("uniform", &PathNetwork::HasUniformCapacity)
      .def("to_json", [](const PathNetwork& net) { return InstanceToJson(net).dump(); })
      .def_static("from_json", [](const std::string& text) {
        return InstanceFromJson(nlohmann::json::parse(text));
      });

  m.def(
      "generate",
      [](int n, uint64_t seed, std::optional<double> uniform_capacity) {
        GenOptions opt;
        if (uniform_capacity) {
          opt.uniform = true;
          opt.uniform_capacity = *uniform_capacity;
        }
        return GenerateInstance(n, seed, opt);
      },
      py::arg("n"), py::arg("seed") = 1, py::arg("uniform_capacity") = py::none());

  m.def(
      "solve",
      [](const PathNetwork& net, int k, const std::string& model,
         std::optional<std::vector<double>> costs) {
        const CueTree tree(net);
        return PlanDict(SolveKSink(tree, k, ToModel(model),
                                   costs ? &*costs : nullptr));
      },
      py::arg("network"), py::arg("k"), py::arg("model") = "nonconfluent",
      py::arg("costs") = py::none());

  m.def(
      "link_weight",
      [](const PathNetwork& net, int i, int j, const std::string& model) {
        const CueTree tree(net);
        LinkWeights w(tree, ToModel(model));
        return w.Weight(i, j);
      },
      py::arg("network"), py::arg("i"), py::arg("j"),
      py::arg("model") = "nonconfluent");

  m.def(
      "naive_k_sink",
      [](const PathNetwork& net, int k, const std::string& model) {
        NaiveOracle oracle(net);
        return PlanDict(oracle.KSink(k, ToModel(model)));
      },
      py::arg("network"), py::arg("k"), py::arg("model") = "nonconfluent");

  m.def(
      "audit_monge",
      [](const PathNetwork& net, const std::string& model, double tolerance) {
        const MongeReport r = AuditMonge(net, ToModel(model), tolerance);
        py::dict d;
        d["pass"] = r.pass;
        d["worst_violation"] = r.worst_violation;
        d["checks"] = r.checks;
        return d;
      },
      py::arg("network"), py::arg("model") = "nonconfluent",
      py::arg("tolerance") = 1e-9);
}
