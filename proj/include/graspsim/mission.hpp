#pragma once

#include "graspsim/geometry.hpp"
#include "graspsim/perception.hpp"
#include "graspsim/trajectory.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace graspsim {

enum class MissionNode {
  WaitingToPick,
  TrackingTarget,
  GoPrePick,
  GoPick,
  CloseGripper,
  PostPick,
  SearchDestination,
  GoPrePlace,
  GoPlace,
  ReleaseObject,
  InstanceComplete,
  MissionComplete,
  Resetting,
  Aborted,
};

const char* to_string(MissionNode node);
std::optional<MissionNode> mission_node_from_string(const std::string& name);
bool is_terminal(MissionNode node);
bool is_place_phase(MissionNode node);

enum class MissionFault {
  TrackTimeout,
  GraspFailed,
  ZErrorExceeded,
  YawErrorExceeded,
};

const char* to_string(MissionFault fault);

struct FaultConfig {
  double tracking_timeout{2.0};  // s without a target update
  double z_error_max{0.02};      // m, checked entering the grasp region
  double yaw_error_max{0.2618};  // rad, checked entering the grasp region
  double grasp_check_delay{1.0}; // s between close command and switch read
  int max_resets{5};
};

struct WaypointScheme {
  double pre_pick_offset{0.65};   // gripper-to-target plateau distance
  double warmup_dwell{3.5};       // s of tracking before committing
  double pre_pick_dwell{6.0};     // s held at the plateau
  double post_pick_rise{0.40};    // m climbed after the grasp
  double post_pick_turn{3.14159265358979};  // yaw change toward the place area
  double search_dwell{1.5};       // s between downward search steps
  double search_step_down{0.15};  // m per search step
  double min_search_altitude{0.25};
  double pre_place_offset{0.65};  // gripper-to-place-point backoff
  double place_right_offset{0.15};    // released to the right of the destination
  double instance_place_increment{0.15};  // extra offset per instance
  double place_height_offset{0.03};   // gripper above destination center
  double place_settle_tol{0.02};  // m, release gate
  double place_force_timeout{8.0};  // s after trajectory end, release anyway
  double release_dwell{0.8};      // s holding after the open command
  double occlusion_range{0.45};   // tracking-timeout suspension radius
  double replan_position_eps{0.02};
  double replan_yaw_eps{0.09};
  double goal_reach_tol{0.06};    // m, arrival check on top of trajectory end
};

struct MissionConfig {
  FaultConfig fault{};
  WaypointScheme waypoints{};
  Eigen::Vector3d arm_offset{0.35, 0.0, -0.02};
  int instance_count{1};
};

/// Everything the transition function reads, assembled by the mission loop
/// each control tick. Values marked "committed" refer to the track the
/// mission locked onto; its filtered estimate freezes when detections stop.
struct MissionInputs {
  double now{0.0};

  bool target_candidate{false};  // fresh target-class track available
  TrackId target_candidate_id{0};
  FlatPose target_candidate_estimate{};

  bool committed_present{false};
  FlatPose committed_estimate{};
  double committed_last_update{0.0};

  bool destination_candidate{false};
  TrackId destination_candidate_id{0};
  FlatPose destination_estimate{};

  MotionState vehicle{};  // estimated

  bool trajectory_active{false};
  bool trajectory_done{false};

  bool in_grasp_region{false};
  bool in_horizontal_region{false};
  double z_error{0.0};    // vs committed estimate, signed
  double yaw_error{0.0};  // vs mirrored approach heading, signed
  double gripper_target_distance{1e9};
  bool grip_switch{false};
};

enum class GripperAction { Open, Close };

struct MissionCommand {
  std::optional<FlatPose> goal;  // request a trajectory to this vehicle pose
  std::optional<GripperAction> gripper;
};

struct MissionState {
  MissionNode node{MissionNode::WaitingToPick};
  FlatPose initial_pose{};
  int reset_count{0};
  int instance_index{0};  // instances completed so far
  std::optional<TrackId> target_track;
  std::optional<TrackId> destination_track;
  FlatPose last_goal{};
  bool goal_active{false};
  double node_entered{0.0};
  double plateau_since{-1.0};
  double search_since{-1.0};
  int search_descents{0};
  bool horizontal_entry_checked{false};
  double close_commanded_at{-1.0};
  bool destination_not_found{false};
  std::vector<MissionFault> fault_log;
};

MissionState make_mission(const FlatPose& initial_pose, double now);

struct StepResult {
  MissionState state;
  MissionCommand command;
};

/// Pure transition function; faults are raised separately via raise_fault
/// after consulting monitor().
StepResult step(const MissionState& state, const MissionInputs& inputs,
                const MissionConfig& config);

/// Continuous fault checks. Empty in place-phase and terminal nodes; the
/// tracking timeout is suspended once the gripper is close enough to the
/// target that it is expected to block the view.
std::vector<MissionFault> monitor(const MissionState& state,
                                  const MissionInputs& inputs,
                                  const MissionConfig& config);

/// Logs the fault, opens the gripper, and flies back to the stored initial
/// pose; aborts once the reset budget is exhausted.
StepResult raise_fault(const MissionState& state, MissionFault fault,
                       const MissionConfig& config);

/// Waypoint helpers shared with the mission loop.
FlatPose vehicle_pose_for_gripper_target(const Eigen::Vector3d& gripper_point,
                                         double approach_yaw,
                                         const Eigen::Vector3d& arm_offset);
double approach_heading(const FlatPose& object_estimate);
Eigen::Vector3d place_point_for(const FlatPose& destination_estimate,
                                const WaypointScheme& waypoints,
                                int instance_index);

/// Declared transition graph; every step()/raise_fault() result is an edge.
const std::map<MissionNode, std::set<MissionNode>>& transition_graph();

/// Validates that a node sequence is a path in the transition graph
/// starting at WaitingToPick.
bool validate_node_sequence(const std::vector<MissionNode>& nodes,
                            std::string* error);

}  // namespace graspsim
