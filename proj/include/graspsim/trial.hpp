#pragma once

#include "graspsim/config.hpp"
#include "graspsim/metrics.hpp"
#include "graspsim/mission.hpp"
#include "graspsim/scenario.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace graspsim {

/// Raised when the plant state becomes non-finite; a bug signal, never a
/// scenario outcome.
struct SimDiverged : std::runtime_error {
  SimDiverged() : std::runtime_error("simulation state became non-finite") {}
};

struct TrialOutput {
  std::vector<TrialRecord> records;   // one per instance
  std::vector<std::string> trace_lines;  // "<t> <node> <event> [detail]"
  std::vector<MissionNode> node_sequence;
  bool aborted{false};
};

/// Runs the full closed loop (plant, estimator, detector, perception,
/// trajectory tracking, mission FSM) for one scenario to completion.
TrialOutput run_trial(const GeneratedScenario& scenario,
                      const SimConfig& config, ScenarioKind kind,
                      int trial_index);

struct RunResult {
  std::vector<TrialRecord> records;
  std::vector<std::string> trace_lines;  // prefixed "<scenario>#<trial> ..."
  int total_trials{0};
  int aborted_trials{0};
};

/// Executes every trial of every spec, up to `workers` concurrently, and
/// merges the outputs in deterministic trial order.
RunResult run_scenarios(const std::vector<ScenarioSpec>& specs,
                        const SimConfig& config, int workers);

/// Re-validates a combined trace stream ("<key> <t> <node> <event>" lines)
/// against the mission transition graph, one mission per key.
bool validate_trace_stream(std::istream& in, std::string* error);

}  // namespace graspsim
