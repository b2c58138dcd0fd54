#pragma once

#include "graspsim/scenario.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace graspsim {

enum class FailureMode {
  KnockOver,
  LowApproach,
  EstimatorDiverged,
  DestinationNotFound,
};

const char* to_string(FailureMode mode);
std::optional<FailureMode> failure_mode_from_string(const std::string& name);

/// One normalized-time gripper-to-target distance trace; resets split a
/// trial into several approaches.
struct ApproachTrace {
  std::string label;  // "success", "reset" or "failure"
  std::vector<std::pair<double, double>> samples;  // (normalized t, meters)
};

struct TrialRecord {
  ScenarioKind scenario{ScenarioKind::SingleCan};
  int trial_index{0};
  int instance_index{0};
  uint64_t seed{0};
  bool pick_success{false};
  std::optional<bool> place_success;  // present only when the pick succeeded
  int reset_count{0};
  double pick_time{-1.0};  // seconds, valid when pick_success
  double starting_distance{0.0};
  std::optional<FailureMode> failure_mode;
  double placed_x{0.0}, placed_y{0.0};  // true rest position, valid on place
  std::vector<ApproachTrace> approaches;
};

/// Per-scenario reporting key; multi-instance trials report their first and
/// second instance separately.
std::string report_key(const TrialRecord& record);

struct SummaryStats {
  int count{0};
  double min{0.0}, q1{0.0}, median{0.0}, q3{0.0}, max{0.0}, mean{0.0};
};

SummaryStats compute_stats(std::vector<double> values);

struct GroupMetrics {
  int trials{0};
  int pick_successes{0};
  int place_attempts{0};
  int place_successes{0};
  int reset_trials{0};
  SummaryStats starting_distance{};
  SummaryStats pick_time{};  // over successful picks
  std::map<std::string, int> failure_modes;
};

struct MetricsSummary {
  std::map<std::string, GroupMetrics> groups;  // per report key
  GroupMetrics overall{};
};

MetricsSummary summarize(const std::vector<TrialRecord>& records);

/// Writes summary.json, trials.csv, distance_traces.csv and
/// failure_modes.csv into out_dir. Obstructed trials are excluded from the
/// distance-trace file unless include_obstructed is set, since their side
/// approaches are not comparable to the direct ones.
void emit_reports(const MetricsSummary& summary,
                  const std::vector<TrialRecord>& records,
                  const std::string& out_dir, bool include_obstructed = false);

/// Reads back the raw trial table written by emit_reports (distance traces
/// are not round-tripped).
std::vector<TrialRecord> read_trial_table(const std::string& path);

std::string summary_to_json(const MetricsSummary& summary);

}  // namespace graspsim
