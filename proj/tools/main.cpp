#include <cstdint>
#include <string>

#include "CLI11.hpp"
#include "osgcoord/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"osgcoord: online submodular multi-agent coordination"};
  app.require_subcommand(1);

  // run
  std::string run_config;
  std::uint64_t seed_override = 0;
  bool seed_given = false;
  std::string policy_override;
  std::string out_override;
  int parallel = 1;
  CLI::App* run = app.add_subcommand("run", "run a configured experiment");
  run->add_option("--config", run_config, "config file path")->required();
  run->add_option("--seed", seed_override, "override master_seed")
      ->each([&](const std::string&) { seed_given = true; });
  run->add_option("--policy", policy_override,
                  "override policy (osg|sg|sg_hat|opt|uniform)");
  run->add_option("--out", out_override, "override the CSV output path");
  run->add_option("--parallel", parallel, "instances to run concurrently")
      ->check(CLI::PositiveNumber);

  // check
  int check_instances = 50;
  std::uint64_t check_seed = 2024;
  bool inject_supermodular = false;
  CLI::App* check = app.add_subcommand(
      "check", "objective property checks and forecaster equivalence battery");
  check->add_option("--instances", check_instances,
                    "sampled tracking-objective configurations")
      ->check(CLI::PositiveNumber);
  check->add_option("--seed", check_seed, "sampling seed");
  check->add_flag("--inject-supermodular", inject_supermodular,
                  "negative control: check a supermodular oracle (must fail)");

  // regret
  std::string trace_path;
  CLI::App* regret =
      app.add_subcommand("regret", "post-hoc regret report over a CSV trace");
  regret->add_option("--trace", trace_path, "CSV trace with optimum columns")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    osgcoord::RunOverrides overrides;
    if (seed_given) overrides.master_seed = seed_override;
    if (!policy_override.empty()) {
      overrides.policy = osgcoord::policy_from_name(policy_override);
    }
    if (!out_override.empty()) overrides.out_csv = out_override;
    overrides.parallel = parallel;
    return osgcoord::cmd_run(run_config, overrides);
  }
  if (check->parsed()) {
    osgcoord::CheckOptions options;
    options.instance_count = check_instances;
    options.seed = check_seed;
    options.inject_supermodular = inject_supermodular;
    return osgcoord::cmd_check(options);
  }
  return osgcoord::cmd_regret(trace_path);
}
