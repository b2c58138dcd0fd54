#include "graspsim/scenario.hpp"

#include "graspsim/gripper.hpp"
#include "graspsim/rng.hpp"

#include <cmath>
#include <numbers>

namespace graspsim {

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::SingleBottle: return "single_bottle";
    case ScenarioKind::SingleCan: return "single_can";
    case ScenarioKind::ClutterCan: return "clutter_can";
    case ScenarioKind::ObstructedCan: return "obstructed_can";
    case ScenarioKind::MultiInstanceCan: return "multi_instance_can";
  }
  return "unknown";
}

std::optional<ScenarioKind> scenario_kind_from_string(const std::string& name) {
  if (name == "single_bottle") return ScenarioKind::SingleBottle;
  if (name == "single_can") return ScenarioKind::SingleCan;
  if (name == "clutter_can") return ScenarioKind::ClutterCan;
  if (name == "obstructed_can") return ScenarioKind::ObstructedCan;
  if (name == "multi_instance_can") return ScenarioKind::MultiInstanceCan;
  return std::nullopt;
}

std::vector<ScenarioSpec> default_protocol(uint64_t seed_base, int scale) {
  const int s = std::max(1, scale);
  return {
      {ScenarioKind::SingleBottle, 20 * s, seed_base},
      {ScenarioKind::SingleCan, 20 * s, seed_base},
      {ScenarioKind::ClutterCan, 10 * s, seed_base},
      {ScenarioKind::ObstructedCan, 10 * s, seed_base},
      {ScenarioKind::MultiInstanceCan, 5 * s, seed_base},
  };
}

uint64_t trial_seed(const ScenarioSpec& spec, int trial_index) {
  uint64_t s = splitmix64(spec.seed_base ^
                          (static_cast<uint64_t>(spec.kind) + 1) *
                              0x100000001b3ULL);
  return splitmix64(s + static_cast<uint64_t>(trial_index));
}

namespace {

SceneObject make_object(ObjectClass cls, const ObjectSpec& spec,
                        const FlatPose& pose, double surface_z) {
  SceneObject o;
  o.object_class = cls;
  o.pose = pose;
  o.diameter = spec.diameter;
  o.height = spec.height;
  o.standing_surface_z = surface_z;
  o.is_toppleable = spec.is_toppleable;
  o.topple_bump_speed = spec.topple_bump_speed;
  return o;
}

SceneObject make_clutter(const FlatPose& pose, double surface_z,
                         ObjectClass confusable) {
  SceneObject o;
  o.pose = pose;
  o.diameter = 0.06;
  o.height = 0.10;
  o.standing_surface_z = surface_z;
  o.is_toppleable = false;
  o.is_clutter = true;
  o.confusable_class = confusable;
  return o;
}

}  // namespace

GeneratedScenario generate_scenario(const ScenarioSpec& spec, int trial_index,
                                    const SimConfig& config) {
  const ScenarioParams& sp = config.scenario;
  GeneratedScenario out;
  out.seed = trial_seed(spec, trial_index);
  Rng rng(out.seed);

  const bool bottle = spec.kind == ScenarioKind::SingleBottle;
  const ObjectSpec& target_spec =
      bottle ? config.objects.bottle : config.objects.can;
  out.target_class =
      bottle ? ObjectClass::TargetBottle : ObjectClass::TargetCan;
  const ObjectClass dest_class =
      bottle ? ObjectClass::DestBottle : ObjectClass::DestCan;
  const ObjectSpec& dest_spec =
      bottle ? config.objects.bottle : config.objects.can;

  // Operator setup: hover at object height, facing the target area.
  const double target_z = sp.cart_z + 0.5 * target_spec.height;
  const double yaw0 = uniform(rng, -sp.initial_yaw_jitter, sp.initial_yaw_jitter);
  const double vehicle_z = target_z - config.gripper.arm_offset.z();
  out.initial_pose = FlatPose(0.0, 0.0, vehicle_z, yaw0);

  const FlatPose gripper_start =
      gripper_center(out.initial_pose, config.gripper);
  const Eigen::Vector3d gaze(std::cos(yaw0), std::sin(yaw0), 0.0);
  const Eigen::Vector3d lateral(-std::sin(yaw0), std::cos(yaw0), 0.0);

  const double distance =
      uniform(rng, sp.starting_distance_min, sp.starting_distance_max);
  out.sampled_starting_distance = distance;

  auto target_position = [&](double lateral_offset) {
    return gripper_start.position() + distance * gaze +
           lateral_offset * lateral +
           Eigen::Vector3d(0.0, 0.0, target_z - gripper_start.z);
  };

  double target_yaw =
      wrap_angle(yaw0 + kPi +
                 uniform(rng, -sp.target_yaw_jitter, sp.target_yaw_jitter));
  if (spec.kind == ScenarioKind::ObstructedCan) {
    const double rotation =
        uniform(rng, sp.obstructed_rotation_min, sp.obstructed_rotation_max);
    target_yaw = wrap_angle(target_yaw + (chance(rng, 0.5) ? rotation : -rotation));
  }

  std::vector<Eigen::Vector3d> target_positions;
  if (spec.kind == ScenarioKind::MultiInstanceCan) {
    const double jitter =
        uniform(rng, -sp.target_lateral_jitter, sp.target_lateral_jitter);
    target_positions.push_back(
        target_position(jitter + 0.5 * sp.instance_separation));
    target_positions.push_back(
        target_position(jitter - 0.5 * sp.instance_separation));
    out.instance_count = 2;
  } else {
    target_positions.push_back(target_position(
        uniform(rng, -sp.target_lateral_jitter, sp.target_lateral_jitter)));
    out.instance_count = 1;
  }

  // Cart under the target(s).
  Surface cart;
  cart.center_x = target_positions.front().x();
  cart.center_y = target_positions.front().y();
  cart.z = sp.cart_z;
  cart.half_x = sp.cart_half;
  cart.half_y = sp.cart_half;
  out.scene.surfaces.push_back(cart);

  double occluded = 0.0;
  if (spec.kind == ScenarioKind::ObstructedCan) {
    occluded = uniform(rng, sp.occluded_fraction_min, sp.occluded_fraction_max);
  } else if (spec.kind == ScenarioKind::ClutterCan) {
    occluded = sp.clutter_occlusion;
  }

  for (const Eigen::Vector3d& pos : target_positions) {
    SceneObject target = make_object(
        out.target_class, target_spec,
        FlatPose(pos.x(), pos.y(), pos.z(), target_yaw), sp.cart_z);
    target.occluded_fraction = occluded;
    out.scene.objects.push_back(target);
  }

  // Destination table behind the start pose; the vehicle turns around after
  // the pick to look for it.
  const double dest_z = sp.table_z + 0.5 * dest_spec.height;
  const Eigen::Vector3d dest_xy =
      -sp.destination_distance * gaze +
      uniform(rng, -sp.destination_lateral_jitter,
              sp.destination_lateral_jitter) *
          lateral;
  Surface table;
  table.center_x = dest_xy.x();
  table.center_y = dest_xy.y();
  table.z = sp.table_z;
  table.half_x = sp.table_half;
  table.half_y = sp.table_half;
  out.scene.surfaces.push_back(table);

  if (!sp.destination_absent) {
    const double dest_yaw = wrap_angle(
        yaw0 + uniform(rng, -sp.target_yaw_jitter, sp.target_yaw_jitter));
    out.scene.objects.push_back(make_object(
        dest_class, dest_spec,
        FlatPose(dest_xy.x(), dest_xy.y(), dest_z, dest_yaw), sp.table_z));
  }

  if (spec.kind == ScenarioKind::ClutterCan) {
    for (int i = 0; i < sp.clutter_count; ++i) {
      const double angle = uniform(rng, 0.0, 2.0 * kPi);
      const double radius = uniform(rng, 0.18, 0.32);
      const Eigen::Vector3d pos =
          target_positions.front() +
          Eigen::Vector3d(radius * std::cos(angle), radius * std::sin(angle),
                          0.0);
      out.scene.objects.push_back(make_clutter(
          FlatPose(pos.x(), pos.y(), target_z, uniform(rng, -kPi, kPi)),
          sp.cart_z, out.target_class));
    }
    for (int i = 0; i < 2; ++i) {
      const Eigen::Vector3d pos =
          dest_xy + Eigen::Vector3d(0.0, 0.0, dest_z) +
          0.30 * Eigen::Vector3d(std::cos(i * 2.1), std::sin(i * 2.1), 0.0);
      out.scene.objects.push_back(make_clutter(
          FlatPose(pos.x(), pos.y(), dest_z, 0.0), sp.table_z, dest_class));
    }
  }

  if (spec.kind == ScenarioKind::ObstructedCan) {
    // An item between the start pose and the target, responsible for the
    // partial occlusion seen from the initial view.
    const Eigen::Vector3d toward_start =
        (gripper_start.position() - target_positions.front()).normalized();
    const Eigen::Vector3d pos =
        target_positions.front() + 0.28 * toward_start;
    SceneObject obstructor = make_clutter(
        FlatPose(pos.x(), pos.y(), target_z, 0.0), sp.cart_z, out.target_class);
    obstructor.height = 0.14;
    out.scene.objects.push_back(obstructor);
  }

  return out;
}

}  // namespace graspsim
