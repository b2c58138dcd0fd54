#include "graspsim/gripper.hpp"

#include <cmath>
#include <numbers>

namespace graspsim {

FlatPose gripper_center(const FlatPose& vehicle_pose,
                        const GripperGeometry& geom) {
  const Eigen::Vector3d offset_world =
      rotate_body_to_world(vehicle_pose.yaw, geom.arm_offset);
  return FlatPose(vehicle_pose.x + offset_world.x(),
                  vehicle_pose.y + offset_world.y(),
                  vehicle_pose.z + offset_world.z(), vehicle_pose.yaw);
}

GraspErrors grasp_errors(const FlatPose& gripper,
                         const FlatPose& object_estimate) {
  const double c = std::cos(gripper.yaw);
  const double s = std::sin(gripper.yaw);
  const double ex = object_estimate.x - gripper.x;
  const double ey = object_estimate.y - gripper.y;
  GraspErrors err;
  err.axial = c * ex + s * ey;
  err.lateral = -s * ex + c * ey;
  err.vertical = object_estimate.z - gripper.z;
  err.yaw =
      wrap_angle(gripper.yaw - object_estimate.yaw - std::numbers::pi);
  return err;
}

bool in_grasp_region(const FlatPose& gripper, const FlatPose& object_estimate,
                     const GraspTolerances& tol) {
  const GraspErrors err = grasp_errors(gripper, object_estimate);
  return std::abs(err.lateral) <= tol.lateral &&
         std::abs(err.axial) <= tol.axial &&
         std::abs(err.vertical) <= tol.vertical;
}

bool in_horizontal_region(const FlatPose& gripper,
                          const FlatPose& object_estimate,
                          const GraspTolerances& tol) {
  const GraspErrors err = grasp_errors(gripper, object_estimate);
  return std::abs(err.lateral) <= tol.lateral &&
         std::abs(err.axial) <= tol.axial;
}

const char* to_string(GraspOutcome outcome) {
  switch (outcome) {
    case GraspOutcome::Success:
      return "success";
    case GraspOutcome::MissedEmpty:
      return "missed_empty";
    case GraspOutcome::KnockOver:
      return "knock_over";
    case GraspOutcome::TooHighSlip:
      return "too_high_slip";
  }
  return "unknown";
}

GraspOutcome attempt_grasp(const FlatPose& gripper_true,
                           const SceneObject& object,
                           const GripperGeometry& geom) {
  if (object.toppled) {
    return GraspOutcome::KnockOver;
  }
  const double horizontal =
      std::hypot(gripper_true.x - object.pose.x, gripper_true.y - object.pose.y);
  const double capture = geom.capture_radius(object.diameter);
  const double grip_fraction =
      (gripper_true.z - object.base_z()) / object.height;

  if (horizontal <= capture) {
    if (grip_fraction >= geom.h_grip_min && grip_fraction <= geom.h_grip_max) {
      return GraspOutcome::Success;
    }
    if (grip_fraction > geom.h_grip_max && grip_fraction <= 1.05) {
      return GraspOutcome::TooHighSlip;
    }
    return GraspOutcome::MissedEmpty;
  }
  if (horizontal <= geom.contact_radius(object.diameter) &&
      grip_fraction > geom.h_grip_max && grip_fraction < 1.1 &&
      object.is_toppleable) {
    // Jaw structure pokes the top region instead of closing around the body.
    return GraspOutcome::KnockOver;
  }
  return GraspOutcome::MissedEmpty;
}

bool grip_switch(GraspOutcome outcome) {
  return outcome == GraspOutcome::Success ||
         outcome == GraspOutcome::TooHighSlip;
}

const char* to_string(PlaceOutcome outcome) {
  switch (outcome) {
    case PlaceOutcome::Success:
      return "success";
    case PlaceOutcome::MissedTable:
      return "missed_table";
    case PlaceOutcome::WrongSpot:
      return "wrong_spot";
  }
  return "unknown";
}

PlaceOutcome release(GripperState& state,
                     const Eigen::Vector3d& release_point_true,
                     const Eigen::Vector3d& intended_point_true,
                     const Surface& table, double place_radius) {
  if (!state.held_object) {
    throw NotHolding{};
  }
  state.held_object.reset();
  state.switch_pressed = false;
  state.jaws = JawState::Open;

  if (!table.contains(release_point_true.x(), release_point_true.y())) {
    return PlaceOutcome::MissedTable;
  }
  const double miss = std::hypot(release_point_true.x() - intended_point_true.x(),
                                 release_point_true.y() - intended_point_true.y());
  return miss <= place_radius ? PlaceOutcome::Success : PlaceOutcome::WrongSpot;
}

}  // namespace graspsim
