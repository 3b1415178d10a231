#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <utility>
#include <vector>

#include "osgcoord/baselines.hpp"
#include "osgcoord/config.hpp"
#include "osgcoord/experiment.hpp"
#include "osgcoord/forecaster.hpp"
#include "osgcoord/metrics.hpp"
#include "osgcoord/reference_forecaster.hpp"
#include "osgcoord/submodular.hpp"
#include "osgcoord/tracking_sim.hpp"

namespace py = pybind11;
using namespace osgcoord;

namespace {

ActionProfile profile_from_pairs(const std::vector<std::pair<int, int>>& pairs) {
  ActionProfile profile;
  for (const auto& [agent, action] : pairs) profile.insert({agent, action});
  return profile;
}

std::vector<std::pair<int, int>> profile_to_pairs(const ActionProfile& profile) {
  std::vector<std::pair<int, int>> out;
  for (const ActionId& e : profile.entries()) out.emplace_back(e.agent, e.index);
  return out;
}

// Objective backed by a Python callable receiving [(agent, action), ...].
class CallableOracle final : public ObjectiveOracle {
 public:
  CallableOracle(std::vector<int> sizes, py::function fn)
      : sizes_(std::move(sizes)), fn_(std::move(fn)) {}

  double eval(const ActionProfile& profile) const override {
    return fn_(profile_to_pairs(profile)).cast<double>();
  }
  std::vector<int> action_sizes() const override { return sizes_; }

 private:
  std::vector<int> sizes_;
  py::function fn_;
};

py::dict report_to_dict(const CheckReport& report) {
  py::dict d;
  d["normalized"] = report.normalized;
  d["monotone"] = report.monotone;
  d["submodular"] = report.submodular;
  d["pass"] = report.pass();
  d["detail"] = describe(report);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Online submodular multi-agent coordination: fixed-share forecasting, "
      "sequential greedy coordination, and a target-tracking simulator";

  py::class_<Forecaster>(m, "Forecaster")
      .def(py::init<int, int>(), py::arg("total_steps"), py::arg("action_count"))
      .def_property_readonly("step", &Forecaster::step)
      .def_property_readonly(
          "expert_count",
          [](const Forecaster& f) { return f.params().expert_count; })
      .def("distribution", &Forecaster::distribution)
      .def("observe", [](Forecaster& f, const std::vector<double>& rewards) {
        f.observe(rewards);
      });

  m.def("sample_index",
        [](const std::vector<double>& p, std::uint64_t seed) {
          RandomStream rng(seed);
          return sample_index(p, rng);
        },
        py::arg("probabilities"), py::arg("seed"));

  m.def("marginal_gain",
        [](py::function fn, const std::vector<int>& sizes,
           const std::pair<int, int>& action,
           const std::vector<std::pair<int, int>>& base) {
          CallableOracle oracle(sizes, std::move(fn));
          return marginal_gain(oracle, {action.first, action.second},
                               profile_from_pairs(base));
        },
        py::arg("objective"), py::arg("action_sizes"), py::arg("action"),
        py::arg("base"));

  m.def("check_normalized_monotone_submodular",
        [](py::function fn, const std::vector<int>& sizes, double tolerance) {
          CallableOracle oracle(sizes, std::move(fn));
          return report_to_dict(
              check_normalized_monotone_submodular(oracle, sizes, tolerance));
        },
        py::arg("objective"), py::arg("action_sizes"),
        py::arg("tolerance") = 1e-9);

  m.def("sg_select",
        [](py::function fn, const std::vector<int>& sizes) {
          CallableOracle oracle(sizes, std::move(fn));
          return profile_to_pairs(sg_select(oracle, sizes));
        },
        py::arg("objective"), py::arg("action_sizes"));

  m.def("brute_force_opt",
        [](py::function fn, const std::vector<int>& sizes) {
          CallableOracle oracle(sizes, std::move(fn));
          OptResult result = brute_force_opt(oracle, sizes);
          return py::make_tuple(profile_to_pairs(result.profile), result.value);
        },
        py::arg("objective"), py::arg("action_sizes"));

  m.def("tracking_objective",
        [](const std::vector<std::pair<double, double>>& robots,
           const std::vector<std::pair<double, double>>& targets, double dt,
           const std::vector<std::pair<int, int>>& profile) {
          std::vector<Vec2> r, t;
          for (auto [x, y] : robots) r.push_back({x, y});
          for (auto [x, y] : targets) t.push_back({x, y});
          const TrackingOracle oracle(r, t, dt);
          return oracle.eval(profile_from_pairs(profile));
        },
        py::arg("robot_starts"), py::arg("target_ends"), py::arg("dt"),
        py::arg("profile"));

  m.def("regret_bound_rhs", &regret_bound_rhs, py::arg("agent_count"),
        py::arg("total_steps"), py::arg("adversarial_effect"),
        py::arg("max_actions"));

  m.def("best_expert_switches", &best_expert_switches, py::arg("rewards"));

  m.def("forecaster_equivalence_deviation",
        &reference::max_distribution_deviation, py::arg("total_steps"),
        py::arg("action_count"), py::arg("stream_count"), py::arg("seed"));

  m.def("run_scenario_json",
        [](const std::string& config_text) {
          const ScenarioConfig config =
              parse_config_text(config_text, "<config>");
          return run_experiment(config).dump();
        },
        py::arg("config_text"),
        "Run a scenario described by config text; returns the summary as a "
        "JSON string.");
}
