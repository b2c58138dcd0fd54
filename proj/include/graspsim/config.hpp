#pragma once

#include "graspsim/controller.hpp"
#include "graspsim/detection_sim.hpp"
#include "graspsim/gripper.hpp"
#include "graspsim/mission.hpp"
#include "graspsim/perception.hpp"
#include "graspsim/trajectory.hpp"
#include "graspsim/vehicle.hpp"

#include <string>

namespace graspsim {

/// Loop rates; the plant integrates at sim_dt and everything else runs on
/// divided schedules.
struct RateConfig {
  double sim_dt{0.005};          // s
  double control_rate_hz{100.0};
  double estimator_rate_hz{40.0};
  double trace_rate_hz{20.0};
};

/// Physical catalog entry for one object family.
struct ObjectSpec {
  double diameter{0.065};
  double height{0.10};
  double topple_bump_speed{0.30};
  bool is_toppleable{true};
};

struct ObjectCatalog {
  ObjectSpec can{0.065, 0.10, 0.30, true};
  ObjectSpec bottle{0.065, 0.155, 0.08, true};
};

/// Scene-generation knobs shared by all scenario kinds.
struct ScenarioParams {
  double starting_distance_min{0.78};  // gripper to target, meters
  double starting_distance_max{1.11};
  double cart_z{0.50};
  double cart_half{0.35};
  double table_z{0.45};
  double table_half{0.55};
  double destination_distance{2.4};    // behind the start pose
  double destination_lateral_jitter{0.15};
  double target_lateral_jitter{0.06};
  double target_yaw_jitter{0.15};
  double obstructed_rotation_min{0.35};  // rad added to the target yaw
  double obstructed_rotation_max{0.90};
  double occluded_fraction_min{0.10};
  double occluded_fraction_max{0.30};
  double clutter_occlusion{0.10};
  int clutter_count{6};
  double instance_separation{0.55};
  double initial_yaw_jitter{0.05};
  bool destination_absent{false};  // fault-injection hook
};

struct TrialParams {
  double timeout{180.0};           // s of simulated time
  double no_target_timeout{10.0};  // s in WaitingToPick without any track
  double place_radius{0.20};       // m, place success radius
  double divergence_threshold{0.15};  // m of drift that counts as divergence
};

/// Deterministic fault-injection hooks, all inert by default.
struct InjectConfig {
  Eigen::Vector3d detection_bias{0.0, 0.0, 0.0};  // world-frame, every detection
  FlatPose drift_step_after_pick{0.0, 0.0, 0.0, 0.0};  // added once at grasp
  bool magnetometer_fault{false};  // force the fault instead of sampling
};

struct SimConfig {
  CameraIntrinsics camera{};
  CameraExtrinsics extrinsics{{0.10, 0.0, 0.0},
                              Eigen::Quaterniond::Identity()};
  FilterSchedule filter{};
  AssociationConfig association{};
  TrajectoryTiming timing{};
  ControllerGains gains{};
  PlantParams plant{};
  RateConfig rates{};
  EstimatorConfig estimator{};
  double magnetometer_fault_prob{0.10};  // sampled once per trial
  DetectionNoiseModel detection{};
  GripperGeometry gripper{};
  GraspTolerances tolerances{};
  FaultConfig fault{};
  WaypointScheme waypoints{};
  ObjectCatalog objects{};
  ScenarioParams scenario{};
  TrialParams trial{};
  InjectConfig inject{};

  MissionConfig mission_config(int instance_count) const {
    MissionConfig cfg;
    cfg.fault = fault;
    cfg.waypoints = waypoints;
    cfg.arm_offset = gripper.arm_offset;
    cfg.instance_count = instance_count;
    return cfg;
  }
};

/// Full reference serialization; every field appears with its active value.
std::string config_to_json(const SimConfig& config);

/// Starts from defaults and overrides whatever keys the file provides, so
/// partial configs stay valid.
SimConfig config_from_json(const std::string& text);
SimConfig load_config(const std::string& path);
void save_config(const SimConfig& config, const std::string& path);

}  // namespace graspsim
