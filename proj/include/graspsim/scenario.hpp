#pragma once

#include "graspsim/config.hpp"
#include "graspsim/scene.hpp"

#include <optional>
#include <string>
#include <vector>

namespace graspsim {

enum class ScenarioKind {
  SingleBottle,
  SingleCan,
  ClutterCan,
  ObstructedCan,
  MultiInstanceCan,
};

const char* to_string(ScenarioKind kind);
std::optional<ScenarioKind> scenario_kind_from_string(const std::string& name);

struct ScenarioSpec {
  ScenarioKind kind{ScenarioKind::SingleCan};
  int trial_count{20};
  uint64_t seed_base{0};
};

/// The standard protocol: 20 single-bottle, 20 single-can, 10 clutter,
/// 10 obstructed and 5 multi-instance trials (each of the latter yielding
/// two records), optionally scaled up for tighter statistics.
std::vector<ScenarioSpec> default_protocol(uint64_t seed_base, int scale = 1);

struct GeneratedScenario {
  Scene scene;
  FlatPose initial_pose{};
  uint64_t seed{0};
  int instance_count{1};
  ObjectClass target_class{ObjectClass::TargetCan};
  double sampled_starting_distance{0.0};  // gripper to target at setup
};

/// Deterministic scene for one trial: same spec, index and config always
/// produce the same layout.
GeneratedScenario generate_scenario(const ScenarioSpec& spec, int trial_index,
                                    const SimConfig& config);

uint64_t trial_seed(const ScenarioSpec& spec, int trial_index);

}  // namespace graspsim
