#include "osgcoord/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "osgcoord/metrics.hpp"
#include "osgcoord/reference_forecaster.hpp"

namespace osgcoord {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct StepRow {
  int t = 0;
  double time_s = 0.0;
  std::vector<int> chosen;
  std::vector<int> optimum;  // empty unless computed
  double f_value = 0.0;
  double opt_value = 0.0;
  std::vector<Vec2> robots;
  std::vector<Vec2> targets;
  std::vector<double> min_dists;
  int maneuvers = 0;
};

struct InstanceOutput {
  InstanceStats stats;
  std::vector<StepRow> rows;  // populated only when a CSV is requested
};

int tail_step_count(int steps, double tail_fraction) {
  const int count = static_cast<int>(std::llround(tail_fraction * steps));
  return std::clamp(count, 1, steps);
}

InstanceOutput run_instance(const ScenarioConfig& config, int instance_index,
                            bool keep_rows) {
  const std::uint64_t seed = config.master_seed + instance_index;
  const TrackingScenario scenario = to_tracking_scenario(config, seed);
  std::unique_ptr<TargetTrackingEnv> env = make_environment(scenario);
  const std::vector<int> sizes = env->action_sizes();
  const int steps = config.steps;
  const double dt = config.dt();

  InstanceOutput out;
  out.stats.seed = seed;
  out.stats.tail_mean_min_distance.assign(config.targets.size(), 0.0);
  if (keep_rows) out.rows.reserve(steps);

  const int tail_count = tail_step_count(steps, config.tail_fraction);
  const int tail_start = steps - tail_count + 1;  // 1-based
  double objective_sum = 0.0;
  double opt_sum = 0.0;
  int delta = 0;
  std::vector<int> previous_opt;

  auto record_step = [&](int t, const ActionProfile& chosen, double value,
                         const ActionProfile* optimum, double opt_value) {
    objective_sum += value;
    const std::vector<double> dists = min_distance_per_target(env->world());
    if (t >= tail_start) {
      for (std::size_t j = 0; j < dists.size(); ++j) {
        out.stats.tail_mean_min_distance[j] += dists[j] / tail_count;
      }
    }
    if (optimum != nullptr) {
      opt_sum += opt_value;
      std::vector<int> current;
      for (const ActionId& e : optimum->entries()) current.push_back(e.index);
      if (!previous_opt.empty()) {
        for (std::size_t i = 0; i < current.size(); ++i) {
          if (current[i] != previous_opt[i]) ++delta;
        }
      }
      previous_opt = std::move(current);
    }
    if (keep_rows) {
      StepRow row;
      row.t = t;
      row.time_s = t * dt;
      for (const ActionId& e : chosen.entries()) row.chosen.push_back(e.index);
      if (optimum != nullptr) {
        for (const ActionId& e : optimum->entries()) row.optimum.push_back(e.index);
        row.opt_value = opt_value;
      }
      row.f_value = value;
      row.robots = env->world().robots;
      for (const TargetState& ts : env->world().targets) {
        row.targets.push_back(ts.position);
      }
      row.min_dists = dists;
      row.maneuvers = total_maneuvers(env->world());
      out.rows.push_back(std::move(row));
    }
  };

  if (config.policy == PolicyKind::kOsg) {
    const double scale = config.reward_scale_auto ? env->singleton_gain_bound()
                                                  : config.reward_scale;
    Coordinator coordinator(steps, sizes, scale, seed);
    RunOptions options;
    options.compute_optimum = config.compute_opt;
    run(coordinator, *env, steps, options,
        [&](int t, const StepOutcome&, const ObjectiveOracle&, const TraceStep& ts) {
          record_step(t, ts.chosen, ts.value,
                      ts.has_optimum ? &ts.optimum : nullptr, ts.optimum_value);
        });
    out.stats.counters = coordinator.counters();
  } else {
    RandomStream policy_rng(derive_seed(seed, stream_domain::kPolicy, 0));
    std::shared_ptr<const TrackingOracle> previous;
    for (int t = 1; t <= steps; ++t) {
      const std::shared_ptr<const TrackingOracle> objective = env->begin_step();
      ActionProfile profile;
      switch (config.policy) {
        case PolicyKind::kSgClairvoyant:
          profile = sg_select(*objective, sizes);
          break;
        case PolicyKind::kSgHat:
          profile = sg_hat_select(previous.get(), sizes);
          break;
        case PolicyKind::kBruteForceOpt:
          profile = brute_force_opt(*objective, sizes).profile;
          break;
        case PolicyKind::kUniformRandom:
          profile = uniform_random_select(sizes, policy_rng);
          break;
        case PolicyKind::kOsg:
          break;  // handled above
      }
      env->finish_step(profile);
      const double value = objective->eval(profile);
      if (config.compute_opt) {
        const OptResult opt = brute_force_opt(*objective, sizes);
        record_step(t, profile, value, &opt.profile, opt.value);
      } else {
        record_step(t, profile, value, nullptr, 0.0);
      }
      previous = objective;
    }
  }

  out.stats.mean_objective = steps > 0 ? objective_sum / steps : 0.0;
  out.stats.maneuvers = total_maneuvers(env->world());
  if (config.compute_opt) {
    out.stats.tracking_regret = 0.5 * opt_sum - objective_sum;
    out.stats.adversarial_effect = delta;
  }
  return out;
}

std::string csv_header(const ScenarioConfig& config) {
  const std::size_t robots = config.robots.size();
  const std::size_t targets = config.targets.size();
  std::ostringstream os;
  os << "instance,t,time_s";
  for (std::size_t i = 0; i < robots; ++i) {
    os << ",robot" << i << "_x,robot" << i << "_y";
  }
  for (std::size_t j = 0; j < targets; ++j) {
    os << ",target" << j << "_x,target" << j << "_y";
  }
  for (std::size_t j = 0; j < targets; ++j) os << ",min_dist" << j;
  os << ",f_value";
  if (config.compute_opt) os << ",opt_value";
  for (std::size_t i = 0; i < robots; ++i) os << ",a" << i;
  if (config.compute_opt) {
    for (std::size_t i = 0; i < robots; ++i) os << ",opt_a" << i;
  }
  os << ",maneuvers";
  return os.str();
}

std::string csv_meta(const ScenarioConfig& config) {
  std::ostringstream os;
  os << "# meta agents=" << config.robots.size() << " action_sizes=";
  for (std::size_t i = 0; i < config.robots.size(); ++i) {
    if (i) os << ",";
    os << kRobotActionCount;
  }
  os << " steps=" << config.steps << " horizon_s=" << format_double(config.horizon_s)
     << " instances=" << config.instances
     << " scenario=" << scenario_name(config.scenario)
     << " policy=" << policy_name(config.policy)
     << " opt=" << (config.compute_opt ? 1 : 0);
  return os.str();
}

void append_csv_rows(std::string& out, int instance, const ScenarioConfig& config,
                     const std::vector<StepRow>& rows) {
  for (const StepRow& row : rows) {
    out += std::to_string(instance);
    out += ',';
    out += std::to_string(row.t);
    out += ',';
    out += format_double(row.time_s);
    for (const Vec2& r : row.robots) {
      out += ',';
      out += format_double(r.x);
      out += ',';
      out += format_double(r.y);
    }
    for (const Vec2& t : row.targets) {
      out += ',';
      out += format_double(t.x);
      out += ',';
      out += format_double(t.y);
    }
    for (double d : row.min_dists) {
      out += ',';
      out += format_double(d);
    }
    out += ',';
    out += format_double(row.f_value);
    if (config.compute_opt) {
      out += ',';
      out += format_double(row.opt_value);
    }
    for (int a : row.chosen) {
      out += ',';
      out += std::to_string(a);
    }
    if (config.compute_opt) {
      for (int a : row.optimum) {
        out += ',';
        out += std::to_string(a);
      }
    }
    out += ',';
    out += std::to_string(row.maneuvers);
    out += '\n';
  }
}

}  // namespace

nlohmann::json run_experiment(const ScenarioConfig& base_config,
                              const RunOverrides& overrides) {
  ScenarioConfig config = base_config;
  if (overrides.master_seed) config.master_seed = *overrides.master_seed;
  if (overrides.policy) config.policy = *overrides.policy;
  if (overrides.out_csv) config.out_csv = *overrides.out_csv;
  validate_config(config, "config");

  const bool want_csv = !config.out_csv.empty();
  const int instances = config.instances;
  std::vector<InstanceOutput> outputs(instances);

  const int workers =
      std::clamp(overrides.parallel, 1, std::max(1, instances));
  if (workers <= 1) {
    for (int k = 0; k < instances; ++k) {
      outputs[k] = run_instance(config, k, want_csv);
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::future<void>> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.push_back(std::async(std::launch::async, [&]() {
        for (int k = next.fetch_add(1); k < instances; k = next.fetch_add(1)) {
          outputs[k] = run_instance(config, k, want_csv);
        }
      }));
    }
    for (std::future<void>& f : pool) f.get();
  }

  if (want_csv) {
    // Single writer, instance order: bytes depend only on the config.
    std::string text = csv_meta(config) + "\n" + csv_header(config) + "\n";
    for (int k = 0; k < instances; ++k) {
      append_csv_rows(text, k, config, outputs[k].rows);
      outputs[k].rows.clear();
    }
    std::ofstream file(config.out_csv, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write CSV '" + config.out_csv + "'");
    file << text;
  }

  // Aggregate.
  const std::size_t target_count = config.targets.size();
  std::vector<double> tail_mean(target_count, 0.0);
  double mean_objective = 0.0;
  double mean_maneuvers = 0.0;
  double mean_regret = 0.0;
  double mean_delta = 0.0;
  std::uint64_t marginal_total = 0;
  std::uint64_t prefix_total = 0;
  std::uint64_t ops_total = 0;
  for (const InstanceOutput& o : outputs) {
    for (std::size_t j = 0; j < target_count; ++j) {
      tail_mean[j] += o.stats.tail_mean_min_distance[j] / instances;
    }
    mean_objective += o.stats.mean_objective / instances;
    mean_maneuvers += static_cast<double>(o.stats.maneuvers) / instances;
    if (o.stats.tracking_regret) mean_regret += *o.stats.tracking_regret / instances;
    if (o.stats.adversarial_effect) {
      mean_delta += static_cast<double>(*o.stats.adversarial_effect) / instances;
    }
    marginal_total += o.stats.counters.total_marginal_evals();
    prefix_total += o.stats.counters.total_prefix_evals();
    ops_total += o.stats.counters.forecaster_ops;
  }
  double tail_mean_overall = 0.0;
  for (double v : tail_mean) tail_mean_overall += v / target_count;

  nlohmann::json summary;
  summary["scenario"] = std::string(scenario_name(config.scenario));
  summary["policy"] = std::string(policy_name(config.policy));
  summary["steps"] = config.steps;
  summary["horizon_s"] = config.horizon_s;
  summary["frequency_hz"] = config.frequency_hz();
  summary["instances"] = instances;
  summary["master_seed"] = config.master_seed;
  summary["tail_fraction"] = config.tail_fraction;
  summary["tail_mean_min_distance_per_target"] = tail_mean;
  summary["tail_mean_min_distance"] = tail_mean_overall;
  summary["mean_objective"] = mean_objective;
  summary["mean_total_maneuvers"] = mean_maneuvers;
  if (config.compute_opt) {
    summary["tracking_regret_half_mean"] = mean_regret;
    summary["adversarial_effect_mean"] = mean_delta;
    summary["regret_bound_rhs_at_mean_effect"] = regret_bound_rhs(
        static_cast<int>(config.robots.size()), config.steps,
        static_cast<int>(std::llround(std::ceil(mean_delta))), kRobotActionCount);
  }
  if (config.policy == PolicyKind::kOsg) {
    summary["counters"] = {{"marginal_evals_total", marginal_total},
                           {"prefix_evals_total", prefix_total},
                           {"forecaster_ops_total", ops_total}};
  }
  return summary;
}

// --- CSV reading for the regret command ---------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

std::string meta_value(const std::string& meta_line, const std::string& key) {
  const std::string needle = key + "=";
  const auto pos = meta_line.find(needle);
  if (pos == std::string::npos) return "";
  const auto start = pos + needle.size();
  const auto end = meta_line.find(' ', start);
  return meta_line.substr(start, end == std::string::npos ? std::string::npos
                                                          : end - start);
}

}  // namespace

RegretReport compute_regret_report(const std::string& trace_path) {
  std::ifstream file(trace_path);
  if (!file) throw std::runtime_error("cannot open trace '" + trace_path + "'");

  std::string meta_line;
  if (!std::getline(file, meta_line) || meta_line.rfind("# meta", 0) != 0) {
    throw std::runtime_error(trace_path + ": missing '# meta' line");
  }
  const int agents = std::stoi(meta_value(meta_line, "agents"));
  const int steps = std::stoi(meta_value(meta_line, "steps"));
  int max_actions = 0;
  {
    std::stringstream sizes(meta_value(meta_line, "action_sizes"));
    std::string item;
    while (std::getline(sizes, item, ',')) {
      max_actions = std::max(max_actions, std::stoi(item));
    }
  }
  if (agents < 1 || steps < 1 || max_actions < 1) {
    throw std::runtime_error(trace_path + ": malformed meta line");
  }

  std::string header_line;
  if (!std::getline(file, header_line)) {
    throw std::runtime_error(trace_path + ": missing header");
  }
  const std::vector<std::string> header = split_csv_line(header_line);
  auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
  };
  const int col_instance = column("instance");
  const int col_f = column("f_value");
  const int col_opt_value = column("opt_value");
  std::vector<int> col_opt_a(agents);
  bool opt_actions_present = true;
  for (int i = 0; i < agents; ++i) {
    col_opt_a[i] = column("opt_a" + std::to_string(i));
    if (col_opt_a[i] < 0) opt_actions_present = false;
  }
  if (col_instance < 0 || col_f < 0) {
    throw std::runtime_error(trace_path + ": missing instance/f_value columns");
  }
  if (col_opt_value < 0 || !opt_actions_present) {
    throw std::runtime_error(
        trace_path + ": trace lacks optimum columns (rerun with compute_opt = true)");
  }

  struct Accumulator {
    double value_sum = 0.0;
    double opt_sum = 0.0;
    int delta = 0;
    std::vector<int> previous_opt;
    int rows = 0;
  };
  std::map<int, Accumulator> per_instance;

  std::string line;
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    Accumulator& acc = per_instance[std::stoi(fields.at(col_instance))];
    acc.value_sum += std::stod(fields.at(col_f));
    acc.opt_sum += std::stod(fields.at(col_opt_value));
    std::vector<int> opt(agents);
    for (int i = 0; i < agents; ++i) opt[i] = std::stoi(fields.at(col_opt_a[i]));
    if (!acc.previous_opt.empty()) {
      for (int i = 0; i < agents; ++i) {
        if (opt[i] != acc.previous_opt[i]) ++acc.delta;
      }
    }
    acc.previous_opt = std::move(opt);
    ++acc.rows;
  }

  RegretReport report;
  report.agent_count = agents;
  report.steps = steps;
  report.max_actions = max_actions;
  for (const auto& [instance, acc] : per_instance) {
    RegretReport::PerInstance entry;
    entry.instance = instance;
    entry.tracking_regret = 0.5 * acc.opt_sum - acc.value_sum;
    entry.adversarial_effect = acc.delta;
    entry.bound = regret_bound_rhs(agents, steps, acc.delta, max_actions);
    report.mean_tracking_regret += entry.tracking_regret;
    report.mean_adversarial_effect += entry.adversarial_effect;
    report.instances.push_back(entry);
  }
  if (!report.instances.empty()) {
    report.mean_tracking_regret /= report.instances.size();
    report.mean_adversarial_effect /= report.instances.size();
    report.bound_at_mean_effect = regret_bound_rhs(
        agents, steps,
        static_cast<int>(std::llround(std::ceil(report.mean_adversarial_effect))),
        max_actions);
  }
  return report;
}

// --- CLI entry points ----------------------------------------------------------

int cmd_run(const std::string& config_path, const RunOverrides& overrides) {
  try {
    const ScenarioConfig config = parse_config_file(config_path);
    const nlohmann::json summary = run_experiment(config, overrides);
    const std::string out_summary = config.out_summary;
    if (!out_summary.empty()) {
      std::ofstream file(out_summary, std::ios::binary);
      if (!file) throw std::runtime_error("cannot write summary '" + out_summary + "'");
      file << summary.dump(2) << "\n";
    }
    std::cout << summary.dump(2) << std::endl;
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}

int cmd_check(const CheckOptions& options) {
  try {
    bool all_pass = true;

    if (options.inject_supermodular) {
      // Negative control: cardinality squared is supermodular, the checker
      // must reject it and produce a witness.
      FunctionOracle bad({2, 2}, [](const ActionProfile& p) {
        return static_cast<double>(p.size() * p.size());
      });
      const CheckReport report =
          check_normalized_monotone_submodular(bad, {2, 2});
      std::cout << "injected supermodular oracle: " << describe(report) << "\n";
      return report.pass() ? 0 : 1;
    }

    // Sampled tracking-objective configurations.
    RandomStream rng(options.seed);
    int failures = 0;
    for (int k = 0; k < options.instance_count; ++k) {
      std::vector<Vec2> robots{{rng.uniform() * 10 - 5, rng.uniform() * 10 - 5},
                               {rng.uniform() * 10 - 5, rng.uniform() * 10 - 5}};
      std::vector<Vec2> targets{{rng.uniform() * 10 - 5, rng.uniform() * 10 - 5},
                                {rng.uniform() * 10 - 5, rng.uniform() * 10 - 5}};
      const double dt = 0.02 + rng.uniform() * 0.2;
      const TrackingOracle oracle(robots, targets, dt);
      const CheckReport report =
          check_normalized_monotone_submodular(oracle, oracle.action_sizes());
      if (!report.pass()) {
        ++failures;
        std::cout << "tracking objective instance " << k << ": "
                  << describe(report) << "\n";
      }
    }
    std::cout << "tracking objective checker: "
              << (options.instance_count - failures) << "/"
              << options.instance_count << " pass\n";
    all_pass = all_pass && failures == 0;

    // Log-domain vs linear-domain forecaster equivalence.
    double worst = 0.0;
    for (int total_steps : {2, 4, 8, 16}) {
      for (int actions : {2, 3, 4}) {
        worst = std::max(worst, reference::max_distribution_deviation(
                                    total_steps, actions, 20, options.seed));
      }
    }
    std::cout << "forecaster equivalence: max deviation " << worst
              << (worst <= 1e-9 ? " (pass)" : " (FAIL)") << "\n";
    all_pass = all_pass && worst <= 1e-9;

    return all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}

int cmd_regret(const std::string& trace_path) {
  try {
    const RegretReport report = compute_regret_report(trace_path);
    for (const auto& entry : report.instances) {
      std::cout << "instance " << entry.instance
                << ": tracking_regret_half=" << format_double(entry.tracking_regret)
                << " delta=" << entry.adversarial_effect
                << " bound=" << format_double(entry.bound)
                << " ratio=" << format_double(entry.tracking_regret / entry.bound)
                << "\n";
    }
    std::cout << "mean: tracking_regret_half="
              << format_double(report.mean_tracking_regret)
              << " delta=" << format_double(report.mean_adversarial_effect)
              << " bound=" << format_double(report.bound_at_mean_effect)
              << " ratio="
              << format_double(report.mean_tracking_regret /
                               report.bound_at_mean_effect)
              << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}

}  // namespace osgcoord
