#pragma once

#include "graspsim/geometry.hpp"
#include "graspsim/scene.hpp"

#include <optional>
#include <stdexcept>

namespace graspsim {

/// Fixed-arm gripper geometry and capture envelope parameters.
struct GripperGeometry {
  Eigen::Vector3d arm_offset{0.35, 0.0, -0.02};  // vehicle center -> gripper center, body frame
  double jaw_span_open{0.095};   // widest opening, meters
  double extension_length{0.22}; // arm extension beyond the cage edge
  double jaw_depth{0.06};        // axial reach of the jaws
  double jaw_half_height{0.015}; // vertical half extent of the jaw band
  double body_drop{0.025};       // lowest structure below the gripper center
  double h_grip_min{0.25};       // capture band, fraction of object height
  double h_grip_max{0.75};
  double slip_delay{1.5};        // seconds a too-high grip survives

  /// Horizontal radius within which a closing jaw captures the object.
  double capture_radius(double object_diameter) const {
    return 0.5 * (jaw_span_open - object_diameter);
  }
  /// Horizontal radius within which the jaw structure touches the object.
  double contact_radius(double object_diameter) const {
    return 0.5 * jaw_span_open + 0.5 * object_diameter;
  }
};

/// Pose-error box that gates the grasp, plus the fault thresholds applied
/// when the vehicle enters the horizontal grasp region.
struct GraspTolerances {
  double lateral{0.03};    // m, perpendicular to the arm axis
  double axial{0.02};      // m, along the arm axis
  double vertical{0.02};   // m
  double yaw_max{0.2618};  // rad, rotational fault threshold (15 deg)
  double z_fault_max{0.02};  // m, vertical fault threshold
};

enum class JawState { Open, Closing, Closed };

struct GripperState {
  JawState jaws{JawState::Open};
  bool switch_pressed{false};
  std::optional<int> held_object;  // scene object index
};

/// Gripper center pose for a given vehicle pose: the arm offset rotated by
/// the vehicle yaw; the gripper shares the vehicle heading.
FlatPose gripper_center(const FlatPose& vehicle_pose,
                        const GripperGeometry& geom);

/// Pose error decomposed in the gripper arm-axis frame. Yaw error is the
/// deviation from the mirrored approach heading (object yaw + pi).
struct GraspErrors {
  double lateral{0.0};
  double axial{0.0};
  double vertical{0.0};
  double yaw{0.0};
};

GraspErrors grasp_errors(const FlatPose& gripper,
                         const FlatPose& object_estimate);

/// All three translational errors inside the tolerance box.
bool in_grasp_region(const FlatPose& gripper, const FlatPose& object_estimate,
                     const GraspTolerances& tol);

/// Lateral and axial errors inside the box; the vertical/rotational fault
/// checks run when this first becomes true.
bool in_horizontal_region(const FlatPose& gripper,
                          const FlatPose& object_estimate,
                          const GraspTolerances& tol);

enum class GraspOutcome { Success, MissedEmpty, KnockOver, TooHighSlip };
const char* to_string(GraspOutcome outcome);

/// Adjudicates a jaw close against the TRUE object pose; the filtered
/// estimate plays no part here.
GraspOutcome attempt_grasp(const FlatPose& gripper_true,
                           const SceneObject& object,
                           const GripperGeometry& geom);

/// Snap-action switch reading immediately after the close: pressed for any
/// outcome that leaves an object between the jaws. A TooHighSlip grip drops
/// the object (and releases the switch) slip_delay seconds later.
bool grip_switch(GraspOutcome outcome);

enum class PlaceOutcome { Success, MissedTable, WrongSpot };
const char* to_string(PlaceOutcome outcome);

struct NotHolding : std::logic_error {
  NotHolding() : std::logic_error("release commanded with no held object") {}
};

/// Adjudicates a release: the true release point must lie over the table
/// surface and within place_radius of the intended spot. Clears the held
/// object and the switch.
PlaceOutcome release(GripperState& state,
                     const Eigen::Vector3d& release_point_true,
                     const Eigen::Vector3d& intended_point_true,
                     const Surface& table, double place_radius);

}  // namespace graspsim
