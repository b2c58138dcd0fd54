#pragma once

#include "graspsim/gripper.hpp"
#include "graspsim/perception.hpp"
#include "graspsim/rng.hpp"
#include "graspsim/scene.hpp"
#include "graspsim/vehicle.hpp"

#include <utility>
#include <vector>

namespace graspsim {

/// Synthetic object-detector model standing in for the onboard network:
/// per-frame Bernoulli detections with Gaussian pose noise, attenuated by
/// scene occlusion and by the gripper blocking the view at close range.
struct DetectionNoiseModel {
  double base_detect_prob_can{0.80};
  double base_detect_prob_bottle{0.60};
  double position_sigma{0.015};  // m, camera frame, per axis
  double yaw_sigma{0.0873};      // rad (5 deg)
  // Piecewise-linear map occluded fraction -> detection probability
  // multiplier, interpolated between the listed knots.
  std::vector<std::pair<double, double>> occlusion_attenuation{
      {0.0, 1.0}, {0.3, 0.5}, {0.6, 0.1}, {1.0, 0.0}};
  // Detections of partially occluded objects are biased (the hidden side
  // skews the pose fit); world-frame meters per unit occluded fraction.
  Eigen::Vector3d occlusion_position_bias{0.0, 0.0, -0.05};
  double gripper_occlusion_range{0.45};  // m, view fades to zero at contact
  double false_positive_rate{0.02};      // per frame per clutter item
  double carry_occlusion_factor{0.85};   // destination visibility while carrying
  double detection_rate_hz{15.0};
  // Constant world-frame offset on every real detection; zero in normal
  // operation, set by fault-injection configs.
  Eigen::Vector3d global_position_bias{0.0, 0.0, 0.0};

  double base_prob_for(ObjectClass c) const {
    return (c == ObjectClass::TargetCan || c == ObjectClass::DestCan)
               ? base_detect_prob_can
               : base_detect_prob_bottle;
  }
  double attenuation_for(double occluded_fraction) const;
};

/// One detector frame. Visibility uses the true vehicle pose; the returned
/// events carry camera-frame positions and vehicle-relative yaw.
std::vector<DetectionEvent> generate_detections(
    const Scene& scene, const VehicleState& truth,
    const FlatPose& gripper_true, const CameraIntrinsics& intrinsics,
    const CameraExtrinsics& extrinsics, const DetectionNoiseModel& model,
    bool carrying, Rng& rng, double now);

/// Geometric knock-over predicate, evaluated every plant step while the
/// vehicle is near objects: the jaw structure sweeping through an object
/// outside the capture envelope tips it if the contact is above the grip
/// band or faster than the object tolerates. Returns indices of objects
/// toppled by this step and marks them in the scene.
std::vector<int> check_knock_over(const FlatPose& gripper_true,
                                  const Eigen::Vector3d& gripper_velocity,
                                  Scene& scene, const GripperGeometry& geom);

/// True if the gripper's lowest structure dips below a standing surface it
/// is horizontally over (a low approach striking the cart or table).
bool check_surface_contact(const FlatPose& gripper_true, const Scene& scene,
                           const GripperGeometry& geom);

}  // namespace graspsim
