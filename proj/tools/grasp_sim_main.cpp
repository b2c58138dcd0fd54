#include "graspsim/config.hpp"
#include "graspsim/metrics.hpp"
#include "graspsim/scenario.hpp"
#include "graspsim/trial.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace graspsim;

int cmd_run(const std::string& scenario_name, int trials, uint64_t seed,
            const std::string& config_path, const std::string& out_dir,
            int workers, int scale, bool include_obstructed) {
  SimConfig config;
  if (!config_path.empty()) {
    config = load_config(config_path);
  }

  std::vector<ScenarioSpec> specs;
  if (scenario_name == "all") {
    specs = default_protocol(seed, scale);
    if (trials > 0) {
      for (ScenarioSpec& spec : specs) {
        spec.trial_count = trials;
      }
    }
  } else {
    const auto kind = scenario_kind_from_string(scenario_name);
    if (!kind) {
      std::cerr << "unknown scenario: " << scenario_name << "\n";
      return 2;
    }
    ScenarioSpec spec;
    spec.kind = *kind;
    spec.trial_count = (trials > 0 ? trials : 20) * std::max(1, scale);
    spec.seed_base = seed;
    specs.push_back(spec);
  }

  RunResult result;
  try {
    result = run_scenarios(specs, config, workers);
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return 3;
  }

  const MetricsSummary summary = summarize(result.records);
  try {
    emit_reports(summary, result.records, out_dir, include_obstructed);
    std::ofstream traces(std::filesystem::path(out_dir) / "traces.log");
    if (!traces) {
      throw std::runtime_error("cannot write traces.log in " + out_dir);
    }
    for (const std::string& line : result.trace_lines) {
      traces << line << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "report output failed: " << e.what() << "\n";
    return 3;
  }

  std::cout << "trials: " << result.total_trials
            << "  records: " << result.records.size()
            << "  aborted: " << result.aborted_trials << "\n";
  std::cout << "overall pick " << summary.overall.pick_successes << "/"
            << summary.overall.trials << ", place "
            << summary.overall.place_successes << "/"
            << summary.overall.place_attempts << "\n";
  std::cout << "reports written to " << out_dir << "\n";

  if (result.total_trials > 0 &&
      result.aborted_trials * 2 > result.total_trials) {
    std::cerr << "aborted trials dominate the run\n";
    return 4;
  }
  return 0;
}

int cmd_replay(const std::string& trace_path) {
  std::ifstream in(trace_path);
  if (!in) {
    std::cerr << "cannot open trace: " << trace_path << "\n";
    return 3;
  }
  std::string error;
  if (!validate_trace_stream(in, &error)) {
    std::cerr << "trace invalid: " << error << "\n";
    return 1;
  }
  std::cout << "trace valid\n";
  return 0;
}

int cmd_report(const std::string& in_dir, bool include_obstructed) {
  try {
    const auto records = read_trial_table(
        (std::filesystem::path(in_dir) / "trials.csv").string());
    const MetricsSummary summary = summarize(records);
    emit_reports(summary, records, in_dir, include_obstructed);
    std::cout << summary_to_json(summary) << "\n";
  } catch (const std::exception& e) {
    std::cerr << "report failed: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded pick-and-place autonomy simulator"};
  app.require_subcommand(1);

  std::string scenario_name = "all";
  int trials = 0;
  uint64_t seed = 0;
  std::string config_path;
  std::string out_dir = "out";
  int workers = 1;
  int scale = 1;
  bool include_obstructed = false;

  CLI::App* run = app.add_subcommand("run", "Run Monte Carlo trials");
  run->add_option("--scenario", scenario_name,
                  "Scenario kind or 'all' (single_bottle, single_can, "
                  "clutter_can, obstructed_can, multi_instance_can)");
  run->add_option("--trials", trials, "Trials per scenario (0 = protocol)");
  run->add_option("--seed", seed, "Base seed");
  run->add_option("--config", config_path, "Config file (JSON)");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--workers", workers, "Concurrent trial workers");
  run->add_option("--scale", scale, "Protocol trial-count multiplier");
  run->add_flag("--include-obstructed", include_obstructed,
                "Keep obstructed trials in the distance-trace file");

  std::string trace_path;
  CLI::App* replay = app.add_subcommand(
      "replay", "Validate a trace file against the mission transition graph");
  replay->add_option("--trace", trace_path, "traces.log file")->required();

  std::string report_dir;
  CLI::App* report = app.add_subcommand(
      "report", "Recompute summaries from a raw trial table");
  report->add_option("--in", report_dir, "Directory with trials.csv")
      ->required();
  report->add_flag("--include-obstructed", include_obstructed,
                   "Keep obstructed trials in the distance-trace file");

  std::string dump_path = "configs/default.json";
  CLI::App* dump = app.add_subcommand(
      "dump-config", "Write the built-in defaults as a reference config");
  dump->add_option("--out", dump_path, "Destination file");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    return cmd_run(scenario_name, trials, seed, config_path, out_dir, workers,
                   scale, include_obstructed);
  }
  if (replay->parsed()) {
    return cmd_replay(trace_path);
  }
  if (report->parsed()) {
    return cmd_report(report_dir, include_obstructed);
  }
  if (dump->parsed()) {
    try {
      graspsim::save_config(graspsim::SimConfig{}, dump_path);
      std::cout << "wrote " << dump_path << "\n";
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 3;
    }
    return 0;
  }
  return 0;
}
