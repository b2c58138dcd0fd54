#include "graspsim/detection_sim.hpp"

#include <algorithm>
#include <cmath>

namespace graspsim {

double DetectionNoiseModel::attenuation_for(double occluded_fraction) const {
  if (occlusion_attenuation.empty()) {
    return 1.0;
  }
  const double f = std::clamp(occluded_fraction, 0.0, 1.0);
  if (f <= occlusion_attenuation.front().first) {
    return occlusion_attenuation.front().second;
  }
  for (size_t i = 1; i < occlusion_attenuation.size(); ++i) {
    const auto& [f1, m1] = occlusion_attenuation[i];
    if (f <= f1) {
      const auto& [f0, m0] = occlusion_attenuation[i - 1];
      const double span = f1 - f0;
      const double t = span > 0.0 ? (f - f0) / span : 1.0;
      return m0 + t * (m1 - m0);
    }
  }
  return occlusion_attenuation.back().second;
}

std::vector<DetectionEvent> generate_detections(
    const Scene& scene, const VehicleState& truth,
    const FlatPose& gripper_true, const CameraIntrinsics& intrinsics,
    const CameraExtrinsics& extrinsics, const DetectionNoiseModel& model,
    bool carrying, Rng& rng, double now) {
  std::vector<DetectionEvent> detections;

  for (const SceneObject& object : scene.objects) {
    if (object.held || object.toppled) {
      continue;
    }

    Eigen::Vector3d world = object.pose.position();
    if (!object.is_clutter) {
      world += model.global_position_bias;
      if (object.occluded_fraction > 0.0) {
        world += model.occlusion_position_bias * object.occluded_fraction;
      }
    }
    const Point3 in_camera = world_to_camera(world, truth.pose, extrinsics);
    if (!in_frustum(in_camera, intrinsics)) {
      continue;
    }

    double probability = 0.0;
    ObjectClass reported_class = object.object_class;
    if (object.is_clutter) {
      probability = model.false_positive_rate;
      reported_class = object.confusable_class;
    } else {
      probability = model.base_prob_for(object.object_class) *
                    model.attenuation_for(object.occluded_fraction);
      if (model.gripper_occlusion_range > 0.0) {
        const double d = (world - gripper_true.position()).norm();
        probability *=
            std::clamp(d / model.gripper_occlusion_range, 0.0, 1.0);
      }
      if (carrying && is_destination_class(object.object_class)) {
        probability *= model.carry_occlusion_factor;
      }
    }

    if (!chance(rng, probability)) {
      continue;
    }

    DetectionEvent event;
    event.object_class = reported_class;
    event.position = in_camera + Point3(gauss(rng, model.position_sigma),
                                        gauss(rng, model.position_sigma),
                                        gauss(rng, model.position_sigma));
    event.yaw = wrap_angle(object.pose.yaw - truth.pose.yaw +
                           gauss(rng, model.yaw_sigma));
    event.timestamp = now;
    detections.push_back(event);
  }
  return detections;
}

std::vector<int> check_knock_over(const FlatPose& gripper_true,
                                  const Eigen::Vector3d& gripper_velocity,
                                  Scene& scene, const GripperGeometry& geom) {
  std::vector<int> toppled;
  const double speed = std::hypot(gripper_velocity.x(), gripper_velocity.y());

  for (size_t i = 0; i < scene.objects.size(); ++i) {
    SceneObject& object = scene.objects[i];
    if (object.held || object.toppled || object.is_clutter ||
        !object.is_toppleable) {
      continue;
    }
    const double horizontal = std::hypot(gripper_true.x - object.pose.x,
                                         gripper_true.y - object.pose.y);
    const double capture = geom.capture_radius(object.diameter);
    const double contact = geom.contact_radius(object.diameter);
    if (horizontal <= capture || horizontal > contact) {
      continue;  // aligned pass-through or clear miss
    }
    const double jaw_low = gripper_true.z - geom.jaw_half_height;
    const double jaw_high = gripper_true.z + geom.jaw_half_height;
    if (jaw_high < object.base_z() || jaw_low > object.top_z()) {
      continue;
    }
    const double grip_fraction =
        (gripper_true.z - object.base_z()) / object.height;
    const bool high_poke = grip_fraction > geom.h_grip_max;
    const bool hard_bump = speed > object.topple_bump_speed;
    if (high_poke || hard_bump) {
      object.toppled = true;
      toppled.push_back(static_cast<int>(i));
    }
  }
  return toppled;
}

bool check_surface_contact(const FlatPose& gripper_true, const Scene& scene,
                           const GripperGeometry& geom) {
  const double low_point = gripper_true.z - geom.body_drop;
  for (const Surface& surface : scene.surfaces) {
    if (surface.contains(gripper_true.x, gripper_true.y) &&
        low_point <= surface.z && gripper_true.z > surface.z - 0.10) {
      return true;
    }
  }
  return false;
}

}  // namespace graspsim
