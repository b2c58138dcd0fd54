#include "graspsim/trial.hpp"

#include "graspsim/detection_sim.hpp"
#include "graspsim/gripper.hpp"
#include "graspsim/perception.hpp"
#include "graspsim/rng.hpp"
#include "graspsim/trajectory.hpp"
#include "graspsim/vehicle.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace graspsim {

namespace {

struct RawApproach {
  double start{0.0};
  double end{-1.0};
  std::string label{"open"};
  std::vector<std::pair<double, Eigen::Vector3d>> gripper_points;
};

struct InstanceLog {
  bool started{false};
  double start_time{0.0};
  Eigen::Vector3d gripper_start{Eigen::Vector3d::Zero()};
  bool pick_success{false};
  double pick_time{-1.0};
  std::optional<bool> place_success;
  std::optional<FailureMode> failure;
  bool have_final_estimate{false};
  FlatPose final_target_estimate{};
  double placed_x{0.0}, placed_y{0.0};
  int resets{0};
  bool knock_over{false};
  bool low_approach{false};
  std::vector<RawApproach> approaches;
};

std::string fmt_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", t);
  return buf;
}

std::string fmt_pose(const FlatPose& p) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.3f %.3f %.3f %.3f", p.x, p.y, p.z, p.yaw);
  return buf;
}

bool finite(const VehicleState& s) {
  return std::isfinite(s.pose.x) && std::isfinite(s.pose.y) &&
         std::isfinite(s.pose.z) && std::isfinite(s.pose.yaw) &&
         s.velocity.allFinite();
}

const SceneObject* true_destination(const Scene& scene) {
  for (const SceneObject& o : scene.objects) {
    if (!o.is_clutter && is_destination_class(o.object_class) && !o.held) {
      return &o;
    }
  }
  return nullptr;
}

const Surface* surface_under(const Scene& scene, double x, double y) {
  for (const Surface& s : scene.surfaces) {
    if (s.contains(x, y)) {
      return &s;
    }
  }
  return nullptr;
}

}  // namespace

TrialOutput run_trial(const GeneratedScenario& scenario,
                      const SimConfig& config, ScenarioKind kind,
                      int trial_index) {
  Scene scene = scenario.scene;
  Rng rng(splitmix64(scenario.seed ^ 0x7261776b6e657373ULL));

  DetectionNoiseModel noise_model = config.detection;
  noise_model.global_position_bias += config.inject.detection_bias;

  VehicleState truth;
  truth.pose = scenario.initial_pose;
  EstimatorState est;
  est.estimate = truth.pose;
  est.magnetometer = (config.inject.magnetometer_fault ||
                      chance(rng, config.magnetometer_fault_prob))
                         ? MagnetometerHealth::Faulted
                         : MagnetometerHealth::Healthy;

  TrackStore store;
  const MissionConfig mission_cfg =
      config.mission_config(scenario.instance_count);
  MissionState fsm = make_mission(est.estimate, 0.0);
  GripperState grip;

  std::optional<PolynomialTrajectory> trajectory;
  double trajectory_start = 0.0;
  ReferencePoint hold;
  hold.pose = est.estimate;
  RpytCommand cmd;
  cmd.thrust = config.gains.hover_thrust();

  const double dt = config.rates.sim_dt;
  const double detection_period = 1.0 / noise_model.detection_rate_hz;
  const double estimator_period = 1.0 / config.rates.estimator_rate_hz;
  const double control_period = 1.0 / config.rates.control_rate_hz;
  const double trace_period = 1.0 / config.rates.trace_rate_hz;
  double next_detection = 0.0, next_estimator = 0.0, next_control = 0.0,
         next_trace = 0.0;

  std::vector<InstanceLog> instances(scenario.instance_count);
  instances[0].started = true;
  instances[0].gripper_start =
      gripper_center(est.estimate, config.gripper).position();
  int current_instance = 0;

  TrialOutput out;
  auto trace = [&](double t, const std::string& text) {
    out.trace_lines.push_back(fmt_time(t) + ' ' + to_string(fsm.node) + ' ' +
                              text);
  };
  out.node_sequence.push_back(fsm.node);
  trace(0.0, "enter");

  bool grasp_pending = false;
  double grasp_adjudicate_at = 0.0;
  GraspOutcome last_grasp{GraspOutcome::MissedEmpty};
  bool slip_pending = false;
  double slip_at = 0.0;
  bool drift_step_applied = false;
  double last_target_seen = 0.0;
  double last_flight_activity = 0.0;
  bool ended = false;
  std::string end_reason;
  bool mission_destination_not_found = false;
  double sim_time = 0.0;

  auto open_approach = [&](double t) {
    instances[current_instance].approaches.push_back(RawApproach{t});
  };
  auto close_approach = [&](double t, const std::string& label) {
    auto& approaches = instances[current_instance].approaches;
    if (!approaches.empty() && approaches.back().end < 0.0) {
      approaches.back().end = t;
      approaches.back().label = label;
    }
  };

  for (int64_t step_index = 0;; ++step_index) {
    const double t = static_cast<double>(step_index) * dt;
    sim_time = t;
    if (t > config.trial.timeout) {
      end_reason = "timeout";
      break;
    }

    const FlatPose gripper_true = gripper_center(truth.pose, config.gripper);

    // Detector frame.
    if (t + 1e-9 >= next_detection) {
      next_detection += detection_period;
      const bool carrying = grip.held_object.has_value();
      const auto detections =
          generate_detections(scene, truth, gripper_true, config.camera,
                              config.extrinsics, noise_model, carrying, rng, t);
      for (const DetectionEvent& detection : detections) {
        ingest(detection, est.estimate, config.camera, config.extrinsics,
               store, config.association, config.filter);
      }
    }

    // Fused state estimate publish.
    if (t + 1e-9 >= next_estimator) {
      next_estimator += estimator_period;
      est = estimate(truth, est, config.estimator, estimator_period, rng);
    }

    // Control + mission tick.
    if (t + 1e-9 >= next_control) {
      next_control += control_period;
      if (!finite(truth)) {
        throw SimDiverged{};
      }

      ReferencePoint ref =
          trajectory ? evaluate(*trajectory, t - trajectory_start) : hold;

      MissionInputs in;
      in.now = t;
      const ObjectTrack* candidate =
          closest_track(store, est.estimate, scenario.target_class, t,
                        config.association);
      if (candidate) {
        last_target_seen = t;
        if (candidate->step_count >= 2) {
          in.target_candidate = true;
          in.target_candidate_id = candidate->id;
          in.target_candidate_estimate = candidate->estimate;
        }
      }
      if (fsm.target_track) {
        if (const ObjectTrack* committed = store.find(*fsm.target_track)) {
          in.committed_present = true;
          in.committed_estimate = committed->estimate;
          in.committed_last_update = committed->last_update;
        }
      }
      const ObjectTrack* dest_can = closest_track(
          store, est.estimate, ObjectClass::DestCan, t, config.association);
      const ObjectTrack* dest_bottle = closest_track(
          store, est.estimate, ObjectClass::DestBottle, t, config.association);
      const ObjectTrack* dest = dest_can;
      if (!dest || (dest_bottle &&
                    dest_bottle->estimate.distance_to(est.estimate) <
                        dest->estimate.distance_to(est.estimate))) {
        dest = dest_bottle ? dest_bottle : dest;
      }
      if (dest && dest->step_count >= 2) {
        in.destination_candidate = true;
        in.destination_candidate_id = dest->id;
        in.destination_estimate = dest->estimate;
      }
      if (fsm.destination_track) {
        if (const ObjectTrack* committed = store.find(*fsm.destination_track)) {
          in.destination_estimate = committed->estimate;
        }
      }

      in.vehicle.pose = est.estimate;
      in.vehicle.velocity = est.velocity_estimate;
      in.vehicle.acceleration = ref.acceleration;
      in.vehicle.yaw_rate = ref.yaw_rate;
      in.trajectory_active =
          trajectory.has_value() && t - trajectory_start < trajectory->duration;
      in.trajectory_done = trajectory.has_value() &&
                           t - trajectory_start >= trajectory->duration;
      if (in.trajectory_active) {
        last_flight_activity = t;
      }

      const FlatPose gripper_est = gripper_center(est.estimate, config.gripper);
      if (in.committed_present) {
        const GraspErrors errors =
            grasp_errors(gripper_est, in.committed_estimate);
        in.in_grasp_region =
            in_grasp_region(gripper_est, in.committed_estimate,
                            config.tolerances);
        in.in_horizontal_region = in_horizontal_region(
            gripper_est, in.committed_estimate, config.tolerances);
        in.z_error = errors.vertical;
        in.yaw_error = errors.yaw;
        in.gripper_target_distance =
            gripper_est.distance_to(in.committed_estimate);
      }
      in.grip_switch = grip.switch_pressed;

      const MissionNode before = fsm.node;
      const int resets_before = fsm.reset_count;
      StepResult result;
      const auto faults = monitor(fsm, in, mission_cfg);
      if (!faults.empty()) {
        trace(t, std::string("fault ") + to_string(faults.front()));
        result = raise_fault(fsm, faults.front(), mission_cfg);
      } else {
        result = step(fsm, in, mission_cfg);
      }
      fsm = result.state;
      instances[current_instance].resets += fsm.reset_count - resets_before;

      if (fsm.node != before) {
        out.node_sequence.push_back(fsm.node);
        trace(t, "enter");

        if (before == MissionNode::WaitingToPick &&
            fsm.node == MissionNode::TrackingTarget) {
          open_approach(t);
        }
        if (fsm.node == MissionNode::WaitingToPick &&
            before == MissionNode::TrackingTarget) {
          // Never committed to an approach; drop the stub.
          auto& approaches = instances[current_instance].approaches;
          if (!approaches.empty() && approaches.back().end < 0.0) {
            approaches.pop_back();
          }
        }
        if (fsm.node == MissionNode::Resetting) {
          close_approach(t, "reset");
        }
        if (before == MissionNode::CloseGripper &&
            fsm.node == MissionNode::PostPick) {
          InstanceLog& inst = instances[current_instance];
          inst.pick_success = last_grasp == GraspOutcome::Success;
          if (inst.pick_success) {
            inst.pick_time = t - inst.start_time;
          }
          if (in.committed_present) {
            inst.final_target_estimate = in.committed_estimate;
            inst.have_final_estimate = true;
          }
          close_approach(t, "pending");
          if (!drift_step_applied &&
              (config.inject.drift_step_after_pick.x != 0.0 ||
               config.inject.drift_step_after_pick.y != 0.0 ||
               config.inject.drift_step_after_pick.z != 0.0 ||
               config.inject.drift_step_after_pick.yaw != 0.0)) {
            est.drift.x += config.inject.drift_step_after_pick.x;
            est.drift.y += config.inject.drift_step_after_pick.y;
            est.drift.z += config.inject.drift_step_after_pick.z;
            est.drift.yaw = wrap_angle(est.drift.yaw +
                                       config.inject.drift_step_after_pick.yaw);
            drift_step_applied = true;
            trace(t, "drift_step_injected");
          }
        }
        if (fsm.node == MissionNode::InstanceComplete &&
            fsm.destination_not_found) {
          mission_destination_not_found = true;
          InstanceLog& inst = instances[current_instance];
          if (inst.pick_success) {
            inst.place_success = false;
            inst.failure = FailureMode::DestinationNotFound;
          }
          trace(t, "destination_not_found");
        }
        if (before == MissionNode::InstanceComplete &&
            fsm.node == MissionNode::WaitingToPick) {
          current_instance =
              std::min(fsm.instance_index,
                       static_cast<int>(instances.size()) - 1);
          InstanceLog& inst = instances[current_instance];
          inst.started = true;
          inst.start_time = t;
          inst.gripper_start = gripper_est.position();
        }
      }

      // Gripper commands.
      if (result.command.gripper == GripperAction::Close) {
        grip.jaws = JawState::Closing;
        grasp_pending = true;
        grasp_adjudicate_at = t + 0.5 * config.fault.grasp_check_delay;
        trace(t, "gripper close");
      } else if (result.command.gripper == GripperAction::Open) {
        trace(t, "gripper open");
        if (fsm.node == MissionNode::ReleaseObject && grip.held_object) {
          const int held_index = *grip.held_object;
          const SceneObject* destination = true_destination(scene);
          Eigen::Vector3d intended = gripper_true.position();
          if (destination) {
            intended = place_point_for(destination->pose, config.waypoints,
                                       fsm.instance_index);
          }
          const Surface* table =
              destination
                  ? surface_under(scene, destination->pose.x,
                                  destination->pose.y)
                  : (scene.surfaces.empty() ? nullptr : &scene.surfaces.back());
          Surface fallback;
          if (!table) {
            table = &fallback;
          }
          const PlaceOutcome outcome =
              release(grip, gripper_true.position(), intended, *table,
                      config.trial.place_radius);
          SceneObject& held = scene.objects[held_index];
          held.held = false;
          held.pose.x = gripper_true.x;
          held.pose.y = gripper_true.y;
          const Surface* rest_surface =
              surface_under(scene, gripper_true.x, gripper_true.y);
          held.pose.z = (rest_surface ? rest_surface->z : 0.0) +
                        0.5 * held.height;
          held.toppled = outcome == PlaceOutcome::MissedTable;
          InstanceLog& inst = instances[current_instance];
          inst.place_success = outcome == PlaceOutcome::Success;
          inst.placed_x = gripper_true.x;
          inst.placed_y = gripper_true.y;
          if (outcome != PlaceOutcome::Success) {
            inst.failure = FailureMode::EstimatorDiverged;
          }
          trace(t, std::string("place ") + to_string(outcome));
        } else if (grip.held_object) {
          // Fault-driven open mid-carry: the object drops where it is.
          SceneObject& held = scene.objects[*grip.held_object];
          held.held = false;
          held.toppled = true;
          held.pose.x = gripper_true.x;
          held.pose.y = gripper_true.y;
          const Surface* below =
              surface_under(scene, gripper_true.x, gripper_true.y);
          held.pose.z = (below ? below->z : 0.0) + 0.5 * held.height;
          grip.held_object.reset();
          grip.switch_pressed = false;
          grip.jaws = JawState::Open;
          instances[current_instance].knock_over = true;
          trace(t, "dropped_object");
        } else {
          grip.jaws = JawState::Open;
          grip.switch_pressed = false;
        }
      }

      // Trajectory requests.
      if (result.command.goal) {
        const FlatPose goal = *result.command.goal;
        MotionState start = in.vehicle;
        const double distance = start.pose.distance_to(goal);
        const double yaw_sweep =
            std::abs(wrap_angle(goal.yaw - start.pose.yaw));
        const double duration =
            std::max(plan_duration(distance, config.timing),
                     yaw_sweep / config.timing.yaw_cruise);
        trajectory = plan_trajectory(start, goal, duration);
        trajectory_start = t;
        trace(t, "goal " + fmt_pose(goal));
      }

      ref = trajectory ? evaluate(*trajectory, t - trajectory_start) : hold;
      MotionState measured;
      measured.pose = est.estimate;
      measured.velocity = est.velocity_estimate;
      cmd = track(ref, measured, config.gains);
    }

    // Grasp adjudication once the jaws have closed.
    if (grasp_pending && t + 1e-9 >= grasp_adjudicate_at) {
      grasp_pending = false;
      grip.jaws = JawState::Closed;
      int nearest = -1;
      double nearest_distance = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < scene.objects.size(); ++i) {
        const SceneObject& object = scene.objects[i];
        if (object.is_clutter || object.held ||
            !is_target_class(object.object_class)) {
          continue;
        }
        const double d = object.pose.distance_to(gripper_true);
        if (d < nearest_distance) {
          nearest_distance = d;
          nearest = static_cast<int>(i);
        }
      }
      last_grasp = GraspOutcome::MissedEmpty;
      if (nearest >= 0) {
        last_grasp =
            attempt_grasp(gripper_true, scene.objects[nearest], config.gripper);
      }
      grip.switch_pressed = grip_switch(last_grasp);
      if (last_grasp == GraspOutcome::Success ||
          last_grasp == GraspOutcome::TooHighSlip) {
        grip.held_object = nearest;
        scene.objects[nearest].held = true;
        if (last_grasp == GraspOutcome::TooHighSlip) {
          slip_pending = true;
          slip_at = t + config.gripper.slip_delay;
        }
      } else if (last_grasp == GraspOutcome::KnockOver) {
        scene.objects[nearest].toppled = true;
        instances[current_instance].knock_over = true;
      }
      trace(t, std::string("grasp ") + to_string(last_grasp));
    }

    // A too-high grip lets go after a short carry.
    if (slip_pending && t >= slip_at) {
      slip_pending = false;
      if (grip.held_object) {
        SceneObject& held = scene.objects[*grip.held_object];
        held.held = false;
        held.toppled = true;
        held.pose.x = gripper_true.x;
        held.pose.y = gripper_true.y;
        const Surface* below =
            surface_under(scene, gripper_true.x, gripper_true.y);
        held.pose.z = (below ? below->z : 0.0) + 0.5 * held.height;
        grip.held_object.reset();
        grip.switch_pressed = false;
        instances[current_instance].knock_over = true;
        trace(t, "slip_drop");
      }
    }

    // Contact predicates during the pick pursuit.
    if (fsm.node == MissionNode::GoPrePick || fsm.node == MissionNode::GoPick ||
        fsm.node == MissionNode::CloseGripper) {
      const auto toppled =
          check_knock_over(gripper_true, truth.velocity, scene, config.gripper);
      if (!toppled.empty()) {
        instances[current_instance].knock_over = true;
        trace(t, "topple");
      }
      if (check_surface_contact(gripper_true, scene, config.gripper)) {
        instances[current_instance].low_approach = true;
        trace(t, "surface_contact");
        end_reason = "surface_contact";
        ended = true;
      }
    }

    // Held object rides along.
    if (grip.held_object) {
      SceneObject& held = scene.objects[*grip.held_object];
      held.pose.x = gripper_true.x;
      held.pose.y = gripper_true.y;
      held.pose.z = gripper_true.z;
    }

    // Distance-trace sampling.
    if (t + 1e-9 >= next_trace) {
      next_trace += trace_period;
      auto& approaches = instances[current_instance].approaches;
      if (!approaches.empty() && approaches.back().end < 0.0) {
        approaches.back().gripper_points.emplace_back(
            t, gripper_center(est.estimate, config.gripper).position());
      }
    }

    if (ended) {
      break;
    }
    if (is_terminal(fsm.node)) {
      end_reason = fsm.node == MissionNode::Aborted ? "aborted" : "complete";
      break;
    }
    if (fsm.node == MissionNode::WaitingToPick &&
        t - std::max(last_target_seen, last_flight_activity) >
            config.trial.no_target_timeout) {
      end_reason = "no_target";
      break;
    }

    truth = step_dynamics(truth, cmd, dt, config.plant);
  }

  out.aborted = fsm.node == MissionNode::Aborted;
  trace(sim_time, "end " + end_reason);

  // Assemble one record per instance.
  for (size_t i = 0; i < instances.size(); ++i) {
    InstanceLog& inst = instances[i];
    TrialRecord record;
    record.scenario = kind;
    record.trial_index = trial_index;
    record.instance_index = static_cast<int>(i);
    record.seed = scenario.seed;
    record.starting_distance = scenario.sampled_starting_distance;

    if (!inst.started) {
      record.pick_success = false;
      if (mission_destination_not_found) {
        record.failure_mode = FailureMode::DestinationNotFound;
      } else if (inst.knock_over) {
        record.failure_mode = FailureMode::KnockOver;
      } else {
        record.failure_mode = FailureMode::EstimatorDiverged;
      }
      out.records.push_back(std::move(record));
      continue;
    }

    record.pick_success = inst.pick_success;
    record.pick_time = inst.pick_time;
    record.reset_count = inst.resets;
    if (inst.pick_success) {
      record.place_success = inst.place_success.value_or(false);
      record.placed_x = inst.placed_x;
      record.placed_y = inst.placed_y;
    }

    FlatPose final_estimate = inst.final_target_estimate;
    bool have_estimate = inst.have_final_estimate;
    if (!have_estimate && fsm.target_track) {
      if (const ObjectTrack* track = store.find(*fsm.target_track)) {
        final_estimate = track->estimate;
        have_estimate = true;
      }
    }
    if (have_estimate) {
      record.starting_distance =
          (inst.gripper_start - final_estimate.position()).norm();
    }

    if (!inst.pick_success) {
      if (inst.knock_over) {
        record.failure_mode = FailureMode::KnockOver;
      } else if (inst.low_approach) {
        record.failure_mode = FailureMode::LowApproach;
      } else {
        record.failure_mode = FailureMode::EstimatorDiverged;
      }
    } else if (inst.failure) {
      record.failure_mode = inst.failure;
    } else if (record.place_success.has_value() && !*record.place_success) {
      record.failure_mode = FailureMode::EstimatorDiverged;
    }

    for (RawApproach& raw : inst.approaches) {
      if (raw.gripper_points.size() < 2) {
        continue;
      }
      if (raw.end < 0.0) {
        raw.end = raw.gripper_points.back().first;
        raw.label = "failure";
      }
      if (raw.label == "pending") {
        raw.label = inst.pick_success ? "success" : "failure";
      }
      ApproachTrace approach;
      approach.label = raw.label;
      const double span = std::max(raw.end - raw.start, 1e-9);
      for (const auto& [ts, point] : raw.gripper_points) {
        const double t_norm = std::clamp((ts - raw.start) / span, 0.0, 1.0);
        const double distance =
            have_estimate ? (point - final_estimate.position()).norm()
                          : 0.0;
        approach.samples.emplace_back(t_norm, distance);
      }
      record.approaches.push_back(std::move(approach));
    }

    out.records.push_back(std::move(record));
  }

  return out;
}

RunResult run_scenarios(const std::vector<ScenarioSpec>& specs,
                        const SimConfig& config, int workers) {
  struct Job {
    ScenarioSpec spec;
    int index;
  };
  std::vector<Job> jobs;
  for (const ScenarioSpec& spec : specs) {
    for (int i = 0; i < spec.trial_count; ++i) {
      jobs.push_back({spec, i});
    }
  }

  std::vector<TrialOutput> outputs(jobs.size());
  std::atomic<size_t> cursor{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto work = [&] {
    while (true) {
      const size_t k = cursor.fetch_add(1);
      if (k >= jobs.size()) {
        return;
      }
      try {
        const GeneratedScenario scenario =
            generate_scenario(jobs[k].spec, jobs[k].index, config);
        outputs[k] =
            run_trial(scenario, config, jobs[k].spec.kind, jobs[k].index);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
        }
        return;
      }
    }
  };

  const int thread_count =
      std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  pool.reserve(thread_count);
  for (int i = 0; i < thread_count; ++i) {
    pool.emplace_back(work);
  }
  for (std::thread& th : pool) {
    th.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }

  RunResult result;
  for (size_t k = 0; k < jobs.size(); ++k) {
    const std::string key = std::string(to_string(jobs[k].spec.kind)) + "#" +
                            std::to_string(jobs[k].index);
    for (const TrialRecord& record : outputs[k].records) {
      result.records.push_back(record);
    }
    for (const std::string& line : outputs[k].trace_lines) {
      result.trace_lines.push_back(key + ' ' + line);
    }
    result.total_trials += 1;
    if (outputs[k].aborted) {
      result.aborted_trials += 1;
    }
  }
  return result;
}

bool validate_trace_stream(std::istream& in, std::string* error) {
  std::map<std::string, std::vector<MissionNode>> sequences;
  std::vector<std::string> order;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::istringstream fields(line);
    std::string key, time_text, node_text, event;
    if (!(fields >> key >> time_text >> node_text >> event)) {
      if (error) *error = "malformed trace line: " + line;
      return false;
    }
    if (event != "enter") {
      continue;
    }
    const auto node = mission_node_from_string(node_text);
    if (!node) {
      if (error) *error = "unknown mission node: " + node_text;
      return false;
    }
    if (!sequences.contains(key)) {
      order.push_back(key);
    }
    sequences[key].push_back(*node);
  }
  if (sequences.empty()) {
    if (error) *error = "trace contains no mission entries";
    return false;
  }
  for (const std::string& key : order) {
    std::string node_error;
    if (!validate_node_sequence(sequences[key], &node_error)) {
      if (error) *error = key + ": " + node_error;
      return false;
    }
  }
  return true;
}

}  // namespace graspsim
