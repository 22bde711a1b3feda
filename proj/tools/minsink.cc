#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "minsink/io.h"
#include "minsink/numeric.h"
#include "minsink/oracle.h"
#include "minsink/planner.h"

namespace {

using namespace minsink;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kBadInput = 2;
constexpr int kInfeasible = 3;

struct RunConfig {
  std::string input, output, costs, check_plan, model = "nonconfluent";
  std::string engine = "smawk", sizes;
  int k = 1, n = 0, i = 1, j = 2, samples = 200, max_n = 512;
  uint64_t seed = 1;
  double tolerance = kRelTol;
  std::optional<double> uniform_capacity;
  int lo = 1, hi = 8;
  double tau = 1.0;
  bool audit_monge = false;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

Model ModelOf(const RunConfig& cfg) {
  Model m;
  if (!ParseModel(cfg.model, m)) {
    throw std::invalid_argument("unknown model '" + cfg.model + "'");
  }
  return m;
}

SolveOptions OptionsOf(const RunConfig& cfg) {
  SolveOptions o;
  if (cfg.engine == "smawk") {
    o.engine = LinkEngine::kSmawk;
  } else if (cfg.engine == "dc") {
    o.engine = LinkEngine::kDivideConquer;
  } else {
    throw std::invalid_argument("engine must be smawk or dc");
  }
  return o;
}

std::optional<std::vector<double>> CostsOf(const RunConfig& cfg, int n) {
  if (cfg.costs.empty()) return std::nullopt;
  std::vector<double> costs = LoadCosts(cfg.costs);
  if (static_cast<int>(costs.size()) != n) {
    throw std::invalid_argument("costs need one entry per vertex");
  }
  return costs;
}

double Ms(std::chrono::steady_clock::time_point a,
          std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

int CmdSolve(const RunConfig& cfg) {
  const PathNetwork net = LoadInstance(cfg.input);
  const Model model = ModelOf(cfg);
  const auto costs = CostsOf(cfg, net.n);
  if (cfg.k < 1 || cfg.k > net.n) {
    std::cerr << "k must be in [1, " << net.n << "]\n";
    return kInfeasible;
  }
  const CueTree tree(net);
  const SinkPlan plan = SolveKSink(tree, cfg.k, model,
                                   costs ? &*costs : nullptr, OptionsOf(cfg));
  Output out(cfg.output);
  out.stream() << PlanToJson(plan).dump() << "\n";
  return kOk;
}

int CmdGen(const RunConfig& cfg) {
  GenOptions o;
  o.lo = cfg.lo;
  o.hi = cfg.hi;
  o.tau = cfg.tau;
  if (cfg.uniform_capacity) {
    o.uniform = true;
    o.uniform_capacity = *cfg.uniform_capacity;
    if (!(o.uniform_capacity > 0.0)) {
      throw std::invalid_argument("uniform capacity must be > 0");
    }
  }
  const PathNetwork net = GenerateInstance(cfg.n, cfg.seed, o);
  Output out(cfg.output);
  out.stream() << InstanceToJson(net).dump() << "\n";
  return kOk;
}

bool Close(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::fabs(a - b) <= tol * std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
}

int CmdVerify(const RunConfig& cfg) {
  const PathNetwork net = LoadInstance(cfg.input);
  if (net.n > cfg.max_n) {
    throw std::invalid_argument("instance too large for the oracle (n > " +
                                std::to_string(cfg.max_n) + ")");
  }
  const Model model = ModelOf(cfg);
  const auto costs = CostsOf(cfg, net.n);
  if (cfg.k < 1 || cfg.k > net.n) {
    std::cerr << "k must be in [1, " << net.n << "]\n";
    return kInfeasible;
  }
  Output out(cfg.output);
  std::ostream& os = out.stream();
  bool ok = true;

  const CueTree tree(net);
  NaiveOracle oracle(net);
  LinkWeights weights(tree, model);
  int mismatches = 0;
  for (int i = 0; i <= net.n; ++i) {
    for (int j = i + 1; j <= net.n + 1; ++j) {
      const double fast = weights.Weight(i, j);
      const double slow = oracle.LinkWeight(i, j, model);
      if (!Close(fast, slow, cfg.tolerance)) {
        os << "link_weight mismatch (" << i << "," << j << "): fast "
           << fast << " oracle " << slow << "\n";
        ++mismatches;
      }
    }
  }
  if (mismatches > 0) ok = false;

  const std::vector<double>* cp = costs ? &*costs : nullptr;
  const SinkPlan fast = SolveKSink(tree, cfg.k, model, cp, OptionsOf(cfg));
  const SinkPlan slow = oracle.KSink(cfg.k, model, cp);
  os.precision(12);
  os << "fast objective " << fast.Objective() << " (aggregate_time "
     << fast.aggregate_time << ")\n";
  os << "oracle objective " << slow.Objective() << " (aggregate_time "
     << slow.aggregate_time << ")\n";
  if (!Close(fast.Objective(), slow.Objective(), cfg.tolerance)) {
    os << "objective mismatch\n";
    ok = false;
  }

  if (!cfg.check_plan.empty()) {
    std::ifstream in(cfg.check_plan);
    if (!in) throw std::invalid_argument("cannot open " + cfg.check_plan);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(cfg.check_plan + ": " + e.what());
    }
    const SinkPlan claimed = PlanFromJson(doc);
    if (static_cast<int>(claimed.sinks.size()) != cfg.k) {
      os << "plan: expected " << cfg.k << " sinks, got "
         << claimed.sinks.size() << "\n";
      ok = false;
    } else {
      const SinkPlan actual = ReconstructDividers(weights, claimed.sinks);
      if (!Close(claimed.aggregate_time, actual.aggregate_time,
                 cfg.tolerance)) {
        os << "plan: aggregate_time " << claimed.aggregate_time
           << " but sinks give " << actual.aggregate_time << "\n";
        ok = false;
      }
      if (!Close(actual.aggregate_time, slow.aggregate_time, cfg.tolerance) &&
          !cp) {
        os << "plan: not optimal, " << actual.aggregate_time << " vs "
           << slow.aggregate_time << "\n";
        ok = false;
      }
      if (claimed.dividers.size() != actual.dividers.size()) {
        os << "plan: expected " << actual.dividers.size() << " dividers\n";
        ok = false;
      } else {
        for (size_t d = 0; d < actual.dividers.size(); ++d) {
          const double lo = oracle.W(claimed.sinks[d]);
          const double hi = oracle.W(claimed.sinks[d + 1]);
          if (claimed.dividers[d] < lo - cfg.tolerance ||
              claimed.dividers[d] > hi + cfg.tolerance) {
            os << "plan: divider " << d + 1 << " = " << claimed.dividers[d]
               << " outside [" << lo << ", " << hi << "]\n";
            ok = false;
          }
        }
      }
    }
  }

  if (cfg.audit_monge) {
    const MongeReport r = AuditMonge(net, model, cfg.tolerance);
    os << "monge audit: " << (r.pass ? "pass" : "FAIL") << ", " << r.checks
       << " checks, worst violation " << r.worst_violation;
    if (r.worst_i >= 0) os << " at (" << r.worst_i << "," << r.worst_j << ")";
    os << "\n";
    if (!r.pass) ok = false;
  }
  os << (ok ? "verify: ok" : "verify: FAILED") << "\n";
  return ok ? kOk : kVerifyFailed;
}

std::vector<int> ParseSizes(const std::string& text) {
  std::vector<int> sizes;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    // a:b means 2^a..2^b
    const int a = std::stoi(text.substr(0, colon));
    const int b = std::stoi(text.substr(colon + 1));
    if (a < 0 || b > 30 || a > b) throw std::invalid_argument("bad size range");
    for (int e = a; e <= b; ++e) sizes.push_back(1 << e);
    return sizes;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) sizes.push_back(std::stoi(item));
  }
  if (sizes.empty()) throw std::invalid_argument("no sizes given");
  return sizes;
}

int CmdBench(const RunConfig& cfg) {
  const Model model = ModelOf(cfg);
  const std::vector<int> sizes =
      cfg.sizes.empty() ? std::vector<int>{cfg.n} : ParseSizes(cfg.sizes);
  GenOptions o;
  if (cfg.uniform_capacity) {
    o.uniform = true;
    o.uniform_capacity = *cfg.uniform_capacity;
  }
  Output out(cfg.output);
  std::ostream& os = out.stream();
  os << "n,k,model,capacity,build_ms,solve_ms,weight_queries\n";
  for (int n : sizes) {
    if (cfg.k > n) return kInfeasible;
    const PathNetwork net = GenerateInstance(n, cfg.seed, o);
    const auto t0 = std::chrono::steady_clock::now();
    const CueTree tree(net);
    const auto t1 = std::chrono::steady_clock::now();
    const SinkPlan plan = SolveKSink(tree, cfg.k, model, nullptr, OptionsOf(cfg));
    const auto t2 = std::chrono::steady_clock::now();
    os << n << "," << cfg.k << "," << ModelName(model) << ","
       << (o.uniform ? "uniform" : "general") << "," << Ms(t0, t1) << ","
       << Ms(t1, t2) << "," << plan.weight_queries << std::endl;
  }
  return kOk;
}

int CmdPlotData(const RunConfig& cfg) {
  const PathNetwork net = LoadInstance(cfg.input);
  if (cfg.i < 1 || cfg.j > net.n || cfg.i >= cfg.j) {
    throw std::invalid_argument("need 1 <= i < j <= n");
  }
  if (cfg.samples < 2) throw std::invalid_argument("samples must be >= 2");
  const CueTree tree(net);
  const IntervalPair sides = Phase2Intervals(tree, cfg.i, cfg.j);
  const PrefixTables& t = tree.fwd();
  const double total = t.Total();
  const double lo = t.W[cfg.i], hi = t.W[cfg.j - 1];
  Output out(cfg.output);
  std::ostream& os = out.stream();
  os.precision(12);
  os << "z,theta_plus,theta_minus,phi\n";
  for (int s = 0; s < cfg.samples; ++s) {
    const double z = lo + (hi - lo) * s / (cfg.samples - 1);
    os << z << "," << sides.plus.Value(tree, z) << ","
       << sides.minus.Value(tree, total - z) << ","
       << PhiValue(tree, sides.plus, sides.minus, z) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minsum k-sink solver for dynamic flow path networks"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* solve = app.add_subcommand("solve", "solve an instance");
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  auto* verify = app.add_subcommand("verify", "compare against the oracle");
  auto* bench = app.add_subcommand("bench", "timing table as CSV");
  auto* plot = app.add_subcommand("plot-data", "sampled theta and Phi as CSV");

  for (auto* sub : {solve, gen, verify, bench, plot}) {
    sub->add_option("--output,-o", cfg.output, "output path (default stdout)");
  }
  for (auto* sub : {solve, verify, plot}) {
    sub->add_option("--input,-i", cfg.input, "instance JSON")->required();
  }
  for (auto* sub : {solve, verify, bench}) {
    sub->add_option("--k", cfg.k, "number of sinks");
    sub->add_option("--model", cfg.model, "confluent or nonconfluent");
    sub->add_option("--engine", cfg.engine, "smawk or dc");
  }
  for (auto* sub : {solve, verify}) {
    sub->add_option("--costs", cfg.costs, "per-vertex facility costs JSON");
  }
  for (auto* sub : {gen, bench}) {
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--n", cfg.n, "vertex count");
    sub->add_option("--uniform-capacity", cfg.uniform_capacity,
                    "use this capacity on every edge");
  }
  gen->add_option("--lo", cfg.lo, "smallest generated value");
  gen->add_option("--hi", cfg.hi, "largest generated value");
  gen->add_option("--tau", cfg.tau, "transit time per unit distance");
  verify->add_option("--tolerance", cfg.tolerance, "relative tolerance");
  verify->add_option("--check-plan", cfg.check_plan, "plan JSON to check");
  verify->add_flag("--audit-monge", cfg.audit_monge, "audit concave Monge");
  verify->add_option("--max-n", cfg.max_n, "largest n accepted");
  bench->add_option("--sizes", cfg.sizes, "comma list, or a:b for 2^a..2^b");
  plot->add_option("--left", cfg.i, "left sink vertex");
  plot->add_option("--right", cfg.j, "right sink vertex");
  plot->add_option("--samples", cfg.samples, "sample count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*solve) return CmdSolve(cfg);
    if (*gen) return CmdGen(cfg);
    if (*verify) return CmdVerify(cfg);
    if (*bench) return CmdBench(cfg);
    if (*plot) return CmdPlotData(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
