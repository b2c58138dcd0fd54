#include "graspsim/metrics.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

namespace graspsim {

using nlohmann::json;

const char* to_string(FailureMode mode) {
  switch (mode) {
    case FailureMode::KnockOver: return "knock_over";
    case FailureMode::LowApproach: return "low_approach";
    case FailureMode::EstimatorDiverged: return "estimator_diverged";
    case FailureMode::DestinationNotFound: return "destination_not_found";
  }
  return "unknown";
}

std::optional<FailureMode> failure_mode_from_string(const std::string& name) {
  if (name == "knock_over") return FailureMode::KnockOver;
  if (name == "low_approach") return FailureMode::LowApproach;
  if (name == "estimator_diverged") return FailureMode::EstimatorDiverged;
  if (name == "destination_not_found") return FailureMode::DestinationNotFound;
  return std::nullopt;
}

std::string report_key(const TrialRecord& record) {
  if (record.scenario == ScenarioKind::MultiInstanceCan) {
    return record.instance_index == 0 ? "multi_instance_first"
                                      : "multi_instance_second";
  }
  return to_string(record.scenario);
}

namespace {

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) {
    return 0.0;
  }
  const double pos = q * (static_cast<double>(sorted.size()) - 1.0);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = static_cast<size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::string fmt(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

void accumulate(GroupMetrics& g, const TrialRecord& r,
                std::vector<double>& distances, std::vector<double>& times) {
  g.trials += 1;
  if (r.pick_success) {
    g.pick_successes += 1;
    if (r.pick_time >= 0.0) {
      times.push_back(r.pick_time);
    }
    if (r.place_success.has_value()) {
      g.place_attempts += 1;
      if (*r.place_success) {
        g.place_successes += 1;
      }
    }
  }
  if (r.reset_count > 0) {
    g.reset_trials += 1;
  }
  distances.push_back(r.starting_distance);
  if (r.failure_mode) {
    g.failure_modes[to_string(*r.failure_mode)] += 1;
  }
}

json stats_json(const SummaryStats& s) {
  return {{"count", s.count}, {"min", s.min},       {"q1", s.q1},
          {"median", s.median}, {"q3", s.q3},       {"max", s.max},
          {"mean", s.mean}};
}

json group_json(const GroupMetrics& g) {
  json j;
  j["trials"] = g.trials;
  j["pick_successes"] = g.pick_successes;
  j["pick_rate"] =
      g.trials > 0 ? static_cast<double>(g.pick_successes) / g.trials : 0.0;
  j["place_attempts"] = g.place_attempts;
  j["place_successes"] = g.place_successes;
  j["place_rate"] = g.place_attempts > 0
                        ? static_cast<double>(g.place_successes) /
                              g.place_attempts
                        : 0.0;
  j["reset_trials"] = g.reset_trials;
  j["starting_distance"] = stats_json(g.starting_distance);
  j["pick_time"] = stats_json(g.pick_time);
  j["failure_modes"] = g.failure_modes;
  return j;
}

}  // namespace

SummaryStats compute_stats(std::vector<double> values) {
  SummaryStats s;
  s.count = static_cast<int>(values.size());
  if (values.empty()) {
    return s;
  }
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  s.q1 = quantile(values, 0.25);
  s.median = quantile(values, 0.50);
  s.q3 = quantile(values, 0.75);
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  return s;
}

MetricsSummary summarize(const std::vector<TrialRecord>& records) {
  MetricsSummary summary;
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>>
      group_values;
  std::vector<double> all_distances, all_times;

  std::vector<const TrialRecord*> ordered;
  ordered.reserve(records.size());
  for (const TrialRecord& r : records) {
    ordered.push_back(&r);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const TrialRecord* a, const TrialRecord* b) {
              if (a->scenario != b->scenario) return a->scenario < b->scenario;
              if (a->trial_index != b->trial_index)
                return a->trial_index < b->trial_index;
              return a->instance_index < b->instance_index;
            });

  for (const TrialRecord* r : ordered) {
    const std::string key = report_key(*r);
    auto& [distances, times] = group_values[key];
    accumulate(summary.groups[key], *r, distances, times);
    accumulate(summary.overall, *r, all_distances, all_times);
  }
  for (auto& [key, g] : summary.groups) {
    g.starting_distance = compute_stats(group_values[key].first);
    g.pick_time = compute_stats(group_values[key].second);
  }
  summary.overall.starting_distance = compute_stats(all_distances);
  summary.overall.pick_time = compute_stats(all_times);
  return summary;
}

std::string summary_to_json(const MetricsSummary& summary) {
  json j;
  for (const auto& [key, g] : summary.groups) {
    j["scenarios"][key] = group_json(g);
  }
  j["overall"] = group_json(summary.overall);
  return j.dump(2);
}

void emit_reports(const MetricsSummary& summary,
                  const std::vector<TrialRecord>& records,
                  const std::string& out_dir, bool include_obstructed) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);

  {
    std::ofstream out(fs::path(out_dir) / "summary.json");
    if (!out) {
      throw std::runtime_error("cannot write summary.json in " + out_dir);
    }
    out << summary_to_json(summary) << '\n';
  }

  {
    std::ofstream out(fs::path(out_dir) / "trials.csv");
    if (!out) {
      throw std::runtime_error("cannot write trials.csv in " + out_dir);
    }
    out << "scenario,trial,instance,seed,pick_success,place_success,"
           "reset_count,pick_time_s,starting_distance_m,failure_mode,"
           "placed_x,placed_y\n";
    for (const TrialRecord& r : records) {
      out << to_string(r.scenario) << ',' << r.trial_index << ','
          << r.instance_index << ',' << r.seed << ','
          << (r.pick_success ? 1 : 0) << ',';
      if (r.place_success.has_value()) {
        out << (*r.place_success ? 1 : 0);
      }
      out << ',' << r.reset_count << ',';
      if (r.pick_success && r.pick_time >= 0.0) {
        out << fmt(r.pick_time, 3);
      }
      out << ',' << fmt(r.starting_distance, 4) << ',';
      if (r.failure_mode) {
        out << to_string(*r.failure_mode);
      }
      out << ',' << fmt(r.placed_x, 4) << ',' << fmt(r.placed_y, 4) << '\n';
    }
  }

  {
    std::ofstream out(fs::path(out_dir) / "distance_traces.csv");
    if (!out) {
      throw std::runtime_error("cannot write distance_traces.csv in " +
                               out_dir);
    }
    out << "scenario,trial,instance,approach,label,t_norm,distance_m\n";
    for (const TrialRecord& r : records) {
      if (!include_obstructed && r.scenario == ScenarioKind::ObstructedCan) {
        continue;
      }
      for (size_t a = 0; a < r.approaches.size(); ++a) {
        for (const auto& [t, d] : r.approaches[a].samples) {
          out << to_string(r.scenario) << ',' << r.trial_index << ','
              << r.instance_index << ',' << a << ',' << r.approaches[a].label
              << ',' << fmt(t, 4) << ',' << fmt(d, 4) << '\n';
        }
      }
    }
  }

  {
    std::ofstream out(fs::path(out_dir) / "failure_modes.csv");
    if (!out) {
      throw std::runtime_error("cannot write failure_modes.csv in " + out_dir);
    }
    out << "scenario,failure_mode,count\n";
    for (const auto& [key, g] : summary.groups) {
      for (const auto& [mode, count] : g.failure_modes) {
        out << key << ',' << mode << ',' << count << '\n';
      }
    }
  }
}

std::vector<TrialRecord> read_trial_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open trial table: " + path);
  }
  std::vector<TrialRecord> records;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      fields.push_back(field);
    }
    while (fields.size() < 12) {
      fields.emplace_back();
    }
    TrialRecord r;
    const auto kind = scenario_kind_from_string(fields[0]);
    if (!kind) {
      throw std::runtime_error("unknown scenario in trial table: " + fields[0]);
    }
    r.scenario = *kind;
    r.trial_index = std::stoi(fields[1]);
    r.instance_index = std::stoi(fields[2]);
    r.seed = std::stoull(fields[3]);
    r.pick_success = fields[4] == "1";
    if (!fields[5].empty()) {
      r.place_success = fields[5] == "1";
    }
    r.reset_count = std::stoi(fields[6]);
    r.pick_time = fields[7].empty() ? -1.0 : std::stod(fields[7]);
    r.starting_distance = std::stod(fields[8]);
    if (!fields[9].empty()) {
      r.failure_mode = failure_mode_from_string(fields[9]);
    }
    r.placed_x = std::stod(fields[10]);
    r.placed_y = std::stod(fields[11]);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace graspsim
