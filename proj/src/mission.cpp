#include "graspsim/mission.hpp"

#include <cmath>
#include <numbers>

namespace graspsim {

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* to_string(MissionNode node) {
  switch (node) {
    case MissionNode::WaitingToPick: return "waiting_to_pick";
    case MissionNode::TrackingTarget: return "tracking_target";
    case MissionNode::GoPrePick: return "go_pre_pick";
    case MissionNode::GoPick: return "go_pick";
    case MissionNode::CloseGripper: return "close_gripper";
    case MissionNode::PostPick: return "post_pick";
    case MissionNode::SearchDestination: return "search_destination";
    case MissionNode::GoPrePlace: return "go_pre_place";
    case MissionNode::GoPlace: return "go_place";
    case MissionNode::ReleaseObject: return "release_object";
    case MissionNode::InstanceComplete: return "instance_complete";
    case MissionNode::MissionComplete: return "mission_complete";
    case MissionNode::Resetting: return "resetting";
    case MissionNode::Aborted: return "aborted";
  }
  return "unknown";
}

std::optional<MissionNode> mission_node_from_string(const std::string& name) {
  static const std::map<std::string, MissionNode> lookup = [] {
    std::map<std::string, MissionNode> m;
    for (int i = 0; i <= static_cast<int>(MissionNode::Aborted); ++i) {
      const auto node = static_cast<MissionNode>(i);
      m[to_string(node)] = node;
    }
    return m;
  }();
  const auto it = lookup.find(name);
  if (it == lookup.end()) {
    return std::nullopt;
  }
  return it->second;
}

bool is_terminal(MissionNode node) {
  return node == MissionNode::MissionComplete || node == MissionNode::Aborted;
}

bool is_place_phase(MissionNode node) {
  return node == MissionNode::GoPrePlace || node == MissionNode::GoPlace ||
         node == MissionNode::ReleaseObject;
}

const char* to_string(MissionFault fault) {
  switch (fault) {
    case MissionFault::TrackTimeout: return "track_timeout";
    case MissionFault::GraspFailed: return "grasp_failed";
    case MissionFault::ZErrorExceeded: return "z_error_exceeded";
    case MissionFault::YawErrorExceeded: return "yaw_error_exceeded";
  }
  return "unknown";
}

MissionState make_mission(const FlatPose& initial_pose, double now) {
  MissionState state;
  state.initial_pose = initial_pose;
  state.node_entered = now;
  return state;
}

FlatPose vehicle_pose_for_gripper_target(const Eigen::Vector3d& gripper_point,
                                         double approach_yaw,
                                         const Eigen::Vector3d& arm_offset) {
  const Eigen::Vector3d offset_world =
      rotate_body_to_world(approach_yaw, arm_offset);
  const Eigen::Vector3d vehicle = gripper_point - offset_world;
  return FlatPose(vehicle.x(), vehicle.y(), vehicle.z(), approach_yaw);
}

double approach_heading(const FlatPose& object_estimate) {
  // The vehicle mirrors the object's yaw: it faces the object along the
  // object's own axis.
  return wrap_angle(object_estimate.yaw + kPi);
}

Eigen::Vector3d place_point_for(const FlatPose& destination_estimate,
                                const WaypointScheme& waypoints,
                                int instance_index) {
  const double heading = approach_heading(destination_estimate);
  const double offset =
      waypoints.place_right_offset +
      waypoints.instance_place_increment * instance_index;
  // Rightward in the vehicle frame is -y.
  const Eigen::Vector3d right_world =
      rotate_body_to_world(heading, {0.0, -offset, 0.0});
  return destination_estimate.position() + right_world +
         Eigen::Vector3d(0.0, 0.0, waypoints.place_height_offset);
}

namespace {

FlatPose pre_pick_goal(const FlatPose& target, const MissionConfig& cfg) {
  const double heading = approach_heading(target);
  const Eigen::Vector3d gripper_point =
      target.position() - cfg.waypoints.pre_pick_offset *
                              Eigen::Vector3d(std::cos(heading),
                                              std::sin(heading), 0.0);
  return vehicle_pose_for_gripper_target(gripper_point, heading,
                                         cfg.arm_offset);
}

FlatPose pick_goal(const FlatPose& target, const MissionConfig& cfg) {
  const double heading = approach_heading(target);
  return vehicle_pose_for_gripper_target(target.position(), heading,
                                         cfg.arm_offset);
}

FlatPose post_pick_goal(const FlatPose& pick_pose, const MissionConfig& cfg) {
  return FlatPose(pick_pose.x, pick_pose.y,
                  pick_pose.z + cfg.waypoints.post_pick_rise,
                  wrap_angle(pick_pose.yaw + cfg.waypoints.post_pick_turn));
}

FlatPose pre_place_goal(const FlatPose& destination, const MissionConfig& cfg,
                        int instance_index) {
  const double heading = approach_heading(destination);
  const Eigen::Vector3d place_point =
      place_point_for(destination, cfg.waypoints, instance_index);
  const Eigen::Vector3d gripper_point =
      place_point - cfg.waypoints.pre_place_offset *
                        Eigen::Vector3d(std::cos(heading), std::sin(heading),
                                        0.0);
  return vehicle_pose_for_gripper_target(gripper_point, heading,
                                         cfg.arm_offset);
}

FlatPose place_goal(const FlatPose& destination, const MissionConfig& cfg,
                    int instance_index) {
  const double heading = approach_heading(destination);
  return vehicle_pose_for_gripper_target(
      place_point_for(destination, cfg.waypoints, instance_index), heading,
      cfg.arm_offset);
}

bool goal_changed(const MissionState& state, const FlatPose& goal,
                  const WaypointScheme& waypoints) {
  if (!state.goal_active) {
    return true;
  }
  return state.last_goal.distance_to(goal) > waypoints.replan_position_eps ||
         std::abs(wrap_angle(state.last_goal.yaw - goal.yaw)) >
             waypoints.replan_yaw_eps;
}

void issue_goal(MissionState& state, MissionCommand& cmd, const FlatPose& goal) {
  state.last_goal = goal;
  state.goal_active = true;
  cmd.goal = goal;
}

bool arrived(const MissionState& state, const MissionInputs& in,
             const WaypointScheme& waypoints) {
  return in.trajectory_done &&
         in.vehicle.pose.distance_to(state.last_goal) < waypoints.goal_reach_tol;
}

void enter(MissionState& state, MissionNode node, double now) {
  state.node = node;
  state.node_entered = now;
}

}  // namespace

StepResult step(const MissionState& previous, const MissionInputs& in,
                const MissionConfig& cfg) {
  MissionState state = previous;
  MissionCommand cmd;
  const WaypointScheme& wp = cfg.waypoints;

  switch (state.node) {
    case MissionNode::WaitingToPick: {
      if (in.target_candidate) {
        state.target_track = in.target_candidate_id;
        enter(state, MissionNode::TrackingTarget, in.now);
      }
      break;
    }

    case MissionNode::TrackingTarget: {
      const bool lost =
          !in.committed_present ||
          in.now - in.committed_last_update > cfg.fault.tracking_timeout;
      if (lost) {
        state.target_track.reset();
        enter(state, MissionNode::WaitingToPick, in.now);
        break;
      }
      if (in.now - state.node_entered >= wp.warmup_dwell) {
        issue_goal(state, cmd, pre_pick_goal(in.committed_estimate, cfg));
        state.plateau_since = -1.0;
        enter(state, MissionNode::GoPrePick, in.now);
      }
      break;
    }

    case MissionNode::GoPrePick: {
      const FlatPose goal = pre_pick_goal(in.committed_estimate, cfg);
      if (goal_changed(state, goal, wp)) {
        issue_goal(state, cmd, goal);
        state.plateau_since = -1.0;
        break;
      }
      if (state.plateau_since < 0.0 && arrived(state, in, wp)) {
        state.plateau_since = in.now;
      }
      if (state.plateau_since >= 0.0 &&
          in.now - state.plateau_since >= wp.pre_pick_dwell) {
        issue_goal(state, cmd, pick_goal(in.committed_estimate, cfg));
        state.horizontal_entry_checked = false;
        enter(state, MissionNode::GoPick, in.now);
      }
      break;
    }

    case MissionNode::GoPick: {
      if (!state.horizontal_entry_checked && in.in_horizontal_region) {
        state.horizontal_entry_checked = true;  // monitor ran its checks first
      }
      if (in.in_grasp_region) {
        cmd.gripper = GripperAction::Close;
        state.close_commanded_at = in.now;
        enter(state, MissionNode::CloseGripper, in.now);
        break;
      }
      const FlatPose goal = pick_goal(in.committed_estimate, cfg);
      if (goal_changed(state, goal, wp)) {
        issue_goal(state, cmd, goal);
      }
      break;
    }

    case MissionNode::CloseGripper: {
      if (in.now - state.close_commanded_at >= cfg.fault.grasp_check_delay &&
          in.grip_switch) {
        issue_goal(state, cmd, post_pick_goal(in.vehicle.pose, cfg));
        enter(state, MissionNode::PostPick, in.now);
      }
      // A released switch after the delay is fault territory, handled by
      // monitor() + raise_fault().
      break;
    }

    case MissionNode::PostPick: {
      if (arrived(state, in, wp)) {
        state.search_since = in.now;
        state.search_descents = 0;
        enter(state, MissionNode::SearchDestination, in.now);
      }
      break;
    }

    case MissionNode::SearchDestination: {
      if (in.destination_candidate) {
        state.destination_track = in.destination_candidate_id;
        issue_goal(state, cmd,
                   pre_place_goal(in.destination_estimate, cfg,
                                  state.instance_index));
        enter(state, MissionNode::GoPrePlace, in.now);
        break;
      }
      if (in.now - state.search_since >= wp.search_dwell) {
        const double next_z = in.vehicle.pose.z - wp.search_step_down;
        if (next_z < wp.min_search_altitude) {
          state.destination_not_found = true;
          enter(state, MissionNode::InstanceComplete, in.now);
          break;
        }
        FlatPose descend = in.vehicle.pose;
        descend.z = next_z;
        issue_goal(state, cmd, descend);
        state.search_descents += 1;
        state.search_since = in.now;
      }
      break;
    }

    case MissionNode::GoPrePlace: {
      const FlatPose goal =
          pre_place_goal(in.destination_estimate, cfg, state.instance_index);
      if (goal_changed(state, goal, wp)) {
        issue_goal(state, cmd, goal);
        break;
      }
      if (arrived(state, in, wp)) {
        issue_goal(state, cmd,
                   place_goal(in.destination_estimate, cfg,
                              state.instance_index));
        enter(state, MissionNode::GoPlace, in.now);
      }
      break;
    }

    case MissionNode::GoPlace: {
      const FlatPose goal =
          place_goal(in.destination_estimate, cfg, state.instance_index);
      if (goal_changed(state, goal, wp)) {
        issue_goal(state, cmd, goal);
        break;
      }
      const bool settled =
          in.trajectory_done &&
          in.vehicle.pose.distance_to(state.last_goal) <= wp.place_settle_tol;
      const bool overdue =
          in.trajectory_done &&
          in.now - state.node_entered >= wp.place_force_timeout;
      if (settled || overdue) {
        cmd.gripper = GripperAction::Open;
        enter(state, MissionNode::ReleaseObject, in.now);
      }
      break;
    }

    case MissionNode::ReleaseObject: {
      if (in.now - state.node_entered >= wp.release_dwell) {
        enter(state, MissionNode::InstanceComplete, in.now);
      }
      break;
    }

    case MissionNode::InstanceComplete: {
      state.instance_index += 1;
      state.target_track.reset();
      state.destination_track.reset();
      if (state.instance_index < cfg.instance_count &&
          !state.destination_not_found) {
        issue_goal(state, cmd, state.initial_pose);
        enter(state, MissionNode::WaitingToPick, in.now);
      } else {
        enter(state, MissionNode::MissionComplete, in.now);
      }
      break;
    }

    case MissionNode::Resetting: {
      if (arrived(state, in, wp)) {
        state.target_track.reset();
        state.horizontal_entry_checked = false;
        enter(state, MissionNode::WaitingToPick, in.now);
      }
      break;
    }

    case MissionNode::MissionComplete:
    case MissionNode::Aborted:
      break;
  }

  return {state, cmd};
}

std::vector<MissionFault> monitor(const MissionState& state,
                                  const MissionInputs& in,
                                  const MissionConfig& cfg) {
  std::vector<MissionFault> faults;
  if (is_place_phase(state.node) || is_terminal(state.node)) {
    return faults;
  }

  switch (state.node) {
    case MissionNode::GoPrePick:
    case MissionNode::GoPick: {
      const bool suspended =
          in.gripper_target_distance < cfg.waypoints.occlusion_range;
      if (!suspended) {
        if (!in.committed_present ||
            in.now - in.committed_last_update > cfg.fault.tracking_timeout) {
          faults.push_back(MissionFault::TrackTimeout);
        }
      }
      if (state.node == MissionNode::GoPick &&
          !state.horizontal_entry_checked && in.in_horizontal_region) {
        if (std::abs(in.z_error) > cfg.fault.z_error_max) {
          faults.push_back(MissionFault::ZErrorExceeded);
        }
        if (std::abs(in.yaw_error) > cfg.fault.yaw_error_max) {
          faults.push_back(MissionFault::YawErrorExceeded);
        }
      }
      break;
    }
    case MissionNode::CloseGripper: {
      if (in.now - state.close_commanded_at >= cfg.fault.grasp_check_delay &&
          !in.grip_switch) {
        faults.push_back(MissionFault::GraspFailed);
      }
      break;
    }
    case MissionNode::PostPick:
    case MissionNode::SearchDestination: {
      // The object slipping out mid-carry shows up as a released switch.
      if (!in.grip_switch) {
        faults.push_back(MissionFault::GraspFailed);
      }
      break;
    }
    default:
      break;
  }
  return faults;
}

StepResult raise_fault(const MissionState& previous, MissionFault fault,
                       const MissionConfig& cfg) {
  MissionState state = previous;
  MissionCommand cmd;
  state.fault_log.push_back(fault);
  state.reset_count += 1;
  if (state.reset_count > cfg.fault.max_resets) {
    state.node = MissionNode::Aborted;
    return {state, cmd};
  }
  cmd.gripper = GripperAction::Open;
  issue_goal(state, cmd, state.initial_pose);
  state.horizontal_entry_checked = false;
  state.node = MissionNode::Resetting;
  return {state, cmd};
}

const std::map<MissionNode, std::set<MissionNode>>& transition_graph() {
  static const std::map<MissionNode, std::set<MissionNode>> graph = {
      {MissionNode::WaitingToPick, {MissionNode::TrackingTarget}},
      {MissionNode::TrackingTarget,
       {MissionNode::WaitingToPick, MissionNode::GoPrePick}},
      {MissionNode::GoPrePick,
       {MissionNode::GoPick, MissionNode::Resetting, MissionNode::Aborted}},
      {MissionNode::GoPick,
       {MissionNode::CloseGripper, MissionNode::Resetting,
        MissionNode::Aborted}},
      {MissionNode::CloseGripper,
       {MissionNode::PostPick, MissionNode::Resetting, MissionNode::Aborted}},
      {MissionNode::PostPick,
       {MissionNode::SearchDestination, MissionNode::Resetting,
        MissionNode::Aborted}},
      {MissionNode::SearchDestination,
       {MissionNode::GoPrePlace, MissionNode::InstanceComplete,
        MissionNode::Resetting, MissionNode::Aborted}},
      {MissionNode::GoPrePlace, {MissionNode::GoPlace}},
      {MissionNode::GoPlace, {MissionNode::ReleaseObject}},
      {MissionNode::ReleaseObject, {MissionNode::InstanceComplete}},
      {MissionNode::InstanceComplete,
       {MissionNode::WaitingToPick, MissionNode::MissionComplete}},
      {MissionNode::Resetting, {MissionNode::WaitingToPick}},
      {MissionNode::MissionComplete, {}},
      {MissionNode::Aborted, {}},
  };
  return graph;
}

bool validate_node_sequence(const std::vector<MissionNode>& nodes,
                            std::string* error) {
  if (nodes.empty()) {
    if (error) *error = "empty node sequence";
    return false;
  }
  if (nodes.front() != MissionNode::WaitingToPick) {
    if (error) *error = "sequence does not start at waiting_to_pick";
    return false;
  }
  const auto& graph = transition_graph();
  for (size_t i = 1; i < nodes.size(); ++i) {
    const auto& edges = graph.at(nodes[i - 1]);
    if (!edges.contains(nodes[i])) {
      if (error) {
        *error = std::string("illegal transition ") +
                 to_string(nodes[i - 1]) + " -> " + to_string(nodes[i]);
      }
      return false;
    }
  }
  return true;
}

}  // namespace graspsim
