#include "graspsim/config.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace graspsim {

using nlohmann::json;

namespace {

json vec3_json(const Eigen::Vector3d& v) {
  return json::array({v.x(), v.y(), v.z()});
}

Eigen::Vector3d vec3_from(const json& j, const Eigen::Vector3d& fallback) {
  if (!j.is_array() || j.size() != 3) {
    return fallback;
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) {
    out = j.at(key).get<T>();
  }
}

void maybe_vec3(const json& j, const char* key, Eigen::Vector3d& out) {
  if (j.contains(key)) {
    out = vec3_from(j.at(key), out);
  }
}

}  // namespace

std::string config_to_json(const SimConfig& c) {
  json j;
  j["camera"] = {{"fx", c.camera.fx},       {"fy", c.camera.fy},
                 {"cx", c.camera.cx},       {"cy", c.camera.cy},
                 {"width", c.camera.width}, {"height", c.camera.height}};
  j["extrinsics"] = {
      {"translation", vec3_json(c.extrinsics.translation)},
      {"rotation_wxyz",
       json::array({c.extrinsics.rotation.w(), c.extrinsics.rotation.x(),
                    c.extrinsics.rotation.y(), c.extrinsics.rotation.z()})}};
  j["filter"] = {{"desired_gain", c.filter.desired_gain},
                 {"decay_steps", c.filter.decay_steps}};
  j["association"] = {{"distance_threshold", c.association.distance_threshold},
                      {"staleness_timeout", c.association.staleness_timeout}};
  j["timing"] = {{"cruise_speed", c.timing.cruise_speed},
                 {"min_duration", c.timing.min_duration},
                 {"yaw_cruise", c.timing.yaw_cruise}};
  j["controller"] = {{"kp", vec3_json(c.gains.kp)},
                     {"kd", vec3_json(c.gains.kd)},
                     {"kp_yaw", c.gains.kp_yaw},
                     {"tilt_limit", c.gains.tilt_limit}};
  j["vehicle"] = {{"mass", c.plant.mass},
                  {"gravity", c.plant.gravity},
                  {"max_thrust", c.plant.max_thrust},
                  {"actuator_tau", c.plant.actuator_tau}};
  j["rates"] = {{"sim_dt", c.rates.sim_dt},
                {"control_rate_hz", c.rates.control_rate_hz},
                {"estimator_rate_hz", c.rates.estimator_rate_hz},
                {"trace_rate_hz", c.rates.trace_rate_hz}};
  j["estimator"] = {{"drift_sigma", vec3_json(c.estimator.drift_sigma)},
                    {"drift_sigma_yaw", c.estimator.drift_sigma_yaw},
                    {"noise_sigma", vec3_json(c.estimator.noise_sigma)},
                    {"noise_sigma_yaw", c.estimator.noise_sigma_yaw},
                    {"velocity_noise_sigma", c.estimator.velocity_noise_sigma},
                    {"sharp_motion_factor", c.estimator.sharp_motion_factor},
                    {"yawrate_threshold", c.estimator.yawrate_threshold},
                    {"tilt_threshold", c.estimator.tilt_threshold},
                    {"mag_fault_yaw_sigma", c.estimator.mag_fault_yaw_sigma},
                    {"magnetometer_fault_prob", c.magnetometer_fault_prob}};
  json attenuation = json::array();
  for (const auto& [f, m] : c.detection.occlusion_attenuation) {
    attenuation.push_back(json::array({f, m}));
  }
  j["detection"] = {
      {"base_detect_prob_can", c.detection.base_detect_prob_can},
      {"base_detect_prob_bottle", c.detection.base_detect_prob_bottle},
      {"position_sigma", c.detection.position_sigma},
      {"yaw_sigma", c.detection.yaw_sigma},
      {"occlusion_attenuation", attenuation},
      {"occlusion_position_bias", vec3_json(c.detection.occlusion_position_bias)},
      {"gripper_occlusion_range", c.detection.gripper_occlusion_range},
      {"false_positive_rate", c.detection.false_positive_rate},
      {"carry_occlusion_factor", c.detection.carry_occlusion_factor},
      {"detection_rate_hz", c.detection.detection_rate_hz}};
  j["gripper"] = {{"arm_offset", vec3_json(c.gripper.arm_offset)},
                  {"jaw_span_open", c.gripper.jaw_span_open},
                  {"extension_length", c.gripper.extension_length},
                  {"jaw_depth", c.gripper.jaw_depth},
                  {"jaw_half_height", c.gripper.jaw_half_height},
                  {"body_drop", c.gripper.body_drop},
                  {"h_grip_min", c.gripper.h_grip_min},
                  {"h_grip_max", c.gripper.h_grip_max},
                  {"slip_delay", c.gripper.slip_delay}};
  j["tolerances"] = {{"lateral", c.tolerances.lateral},
                     {"axial", c.tolerances.axial},
                     {"vertical", c.tolerances.vertical},
                     {"yaw_max", c.tolerances.yaw_max},
                     {"z_fault_max", c.tolerances.z_fault_max}};
  j["fault"] = {{"tracking_timeout", c.fault.tracking_timeout},
                {"z_error_max", c.fault.z_error_max},
                {"yaw_error_max", c.fault.yaw_error_max},
                {"grasp_check_delay", c.fault.grasp_check_delay},
                {"max_resets", c.fault.max_resets}};
  j["waypoints"] = {
      {"pre_pick_offset", c.waypoints.pre_pick_offset},
      {"warmup_dwell", c.waypoints.warmup_dwell},
      {"pre_pick_dwell", c.waypoints.pre_pick_dwell},
      {"post_pick_rise", c.waypoints.post_pick_rise},
      {"post_pick_turn", c.waypoints.post_pick_turn},
      {"search_dwell", c.waypoints.search_dwell},
      {"search_step_down", c.waypoints.search_step_down},
      {"min_search_altitude", c.waypoints.min_search_altitude},
      {"pre_place_offset", c.waypoints.pre_place_offset},
      {"place_right_offset", c.waypoints.place_right_offset},
      {"instance_place_increment", c.waypoints.instance_place_increment},
      {"place_height_offset", c.waypoints.place_height_offset},
      {"place_settle_tol", c.waypoints.place_settle_tol},
      {"place_force_timeout", c.waypoints.place_force_timeout},
      {"release_dwell", c.waypoints.release_dwell},
      {"occlusion_range", c.waypoints.occlusion_range},
      {"replan_position_eps", c.waypoints.replan_position_eps},
      {"replan_yaw_eps", c.waypoints.replan_yaw_eps},
      {"goal_reach_tol", c.waypoints.goal_reach_tol}};
  j["objects"] = {
      {"can",
       {{"diameter", c.objects.can.diameter},
        {"height", c.objects.can.height},
        {"topple_bump_speed", c.objects.can.topple_bump_speed},
        {"is_toppleable", c.objects.can.is_toppleable}}},
      {"bottle",
       {{"diameter", c.objects.bottle.diameter},
        {"height", c.objects.bottle.height},
        {"topple_bump_speed", c.objects.bottle.topple_bump_speed},
        {"is_toppleable", c.objects.bottle.is_toppleable}}}};
  j["scenario"] = {
      {"starting_distance_min", c.scenario.starting_distance_min},
      {"starting_distance_max", c.scenario.starting_distance_max},
      {"cart_z", c.scenario.cart_z},
      {"cart_half", c.scenario.cart_half},
      {"table_z", c.scenario.table_z},
      {"table_half", c.scenario.table_half},
      {"destination_distance", c.scenario.destination_distance},
      {"destination_lateral_jitter", c.scenario.destination_lateral_jitter},
      {"target_lateral_jitter", c.scenario.target_lateral_jitter},
      {"target_yaw_jitter", c.scenario.target_yaw_jitter},
      {"obstructed_rotation_min", c.scenario.obstructed_rotation_min},
      {"obstructed_rotation_max", c.scenario.obstructed_rotation_max},
      {"occluded_fraction_min", c.scenario.occluded_fraction_min},
      {"occluded_fraction_max", c.scenario.occluded_fraction_max},
      {"clutter_occlusion", c.scenario.clutter_occlusion},
      {"clutter_count", c.scenario.clutter_count},
      {"instance_separation", c.scenario.instance_separation},
      {"initial_yaw_jitter", c.scenario.initial_yaw_jitter},
      {"destination_absent", c.scenario.destination_absent}};
  j["trial"] = {{"timeout", c.trial.timeout},
                {"no_target_timeout", c.trial.no_target_timeout},
                {"place_radius", c.trial.place_radius},
                {"divergence_threshold", c.trial.divergence_threshold}};
  j["inject"] = {{"detection_bias", vec3_json(c.inject.detection_bias)},
                 {"drift_step_after_pick",
                  json::array({c.inject.drift_step_after_pick.x,
                               c.inject.drift_step_after_pick.y,
                               c.inject.drift_step_after_pick.z,
                               c.inject.drift_step_after_pick.yaw})},
                 {"magnetometer_fault", c.inject.magnetometer_fault}};
  return j.dump(2);
}

SimConfig config_from_json(const std::string& text) {
  const json j = json::parse(text);
  SimConfig c;

  if (j.contains("camera")) {
    const json& jc = j.at("camera");
    maybe(jc, "fx", c.camera.fx);
    maybe(jc, "fy", c.camera.fy);
    maybe(jc, "cx", c.camera.cx);
    maybe(jc, "cy", c.camera.cy);
    maybe(jc, "width", c.camera.width);
    maybe(jc, "height", c.camera.height);
  }
  if (j.contains("extrinsics")) {
    const json& je = j.at("extrinsics");
    maybe_vec3(je, "translation", c.extrinsics.translation);
    if (je.contains("rotation_wxyz")) {
      const json& q = je.at("rotation_wxyz");
      c.extrinsics.rotation = Eigen::Quaterniond(
          q[0].get<double>(), q[1].get<double>(), q[2].get<double>(),
          q[3].get<double>());
      c.extrinsics.rotation.normalize();
    }
  }
  if (j.contains("filter")) {
    maybe(j.at("filter"), "desired_gain", c.filter.desired_gain);
    maybe(j.at("filter"), "decay_steps", c.filter.decay_steps);
  }
  if (j.contains("association")) {
    maybe(j.at("association"), "distance_threshold",
          c.association.distance_threshold);
    maybe(j.at("association"), "staleness_timeout",
          c.association.staleness_timeout);
  }
  if (j.contains("timing")) {
    maybe(j.at("timing"), "cruise_speed", c.timing.cruise_speed);
    maybe(j.at("timing"), "min_duration", c.timing.min_duration);
    maybe(j.at("timing"), "yaw_cruise", c.timing.yaw_cruise);
  }
  if (j.contains("controller")) {
    const json& jg = j.at("controller");
    maybe_vec3(jg, "kp", c.gains.kp);
    maybe_vec3(jg, "kd", c.gains.kd);
    maybe(jg, "kp_yaw", c.gains.kp_yaw);
    maybe(jg, "tilt_limit", c.gains.tilt_limit);
  }
  if (j.contains("vehicle")) {
    const json& jv = j.at("vehicle");
    maybe(jv, "mass", c.plant.mass);
    maybe(jv, "gravity", c.plant.gravity);
    maybe(jv, "max_thrust", c.plant.max_thrust);
    maybe(jv, "actuator_tau", c.plant.actuator_tau);
  }
  c.gains.mass = c.plant.mass;
  c.gains.gravity = c.plant.gravity;
  c.gains.max_thrust = c.plant.max_thrust;
  if (j.contains("rates")) {
    const json& jr = j.at("rates");
    maybe(jr, "sim_dt", c.rates.sim_dt);
    maybe(jr, "control_rate_hz", c.rates.control_rate_hz);
    maybe(jr, "estimator_rate_hz", c.rates.estimator_rate_hz);
    maybe(jr, "trace_rate_hz", c.rates.trace_rate_hz);
  }
  if (j.contains("estimator")) {
    const json& je = j.at("estimator");
    maybe_vec3(je, "drift_sigma", c.estimator.drift_sigma);
    maybe(je, "drift_sigma_yaw", c.estimator.drift_sigma_yaw);
    maybe_vec3(je, "noise_sigma", c.estimator.noise_sigma);
    maybe(je, "noise_sigma_yaw", c.estimator.noise_sigma_yaw);
    maybe(je, "velocity_noise_sigma", c.estimator.velocity_noise_sigma);
    maybe(je, "sharp_motion_factor", c.estimator.sharp_motion_factor);
    maybe(je, "yawrate_threshold", c.estimator.yawrate_threshold);
    maybe(je, "tilt_threshold", c.estimator.tilt_threshold);
    maybe(je, "mag_fault_yaw_sigma", c.estimator.mag_fault_yaw_sigma);
    maybe(je, "magnetometer_fault_prob", c.magnetometer_fault_prob);
  }
  if (j.contains("detection")) {
    const json& jd = j.at("detection");
    maybe(jd, "base_detect_prob_can", c.detection.base_detect_prob_can);
    maybe(jd, "base_detect_prob_bottle", c.detection.base_detect_prob_bottle);
    maybe(jd, "position_sigma", c.detection.position_sigma);
    maybe(jd, "yaw_sigma", c.detection.yaw_sigma);
    if (jd.contains("occlusion_attenuation")) {
      c.detection.occlusion_attenuation.clear();
      for (const json& knot : jd.at("occlusion_attenuation")) {
        c.detection.occlusion_attenuation.emplace_back(
            knot[0].get<double>(), knot[1].get<double>());
      }
    }
    maybe_vec3(jd, "occlusion_position_bias",
               c.detection.occlusion_position_bias);
    maybe(jd, "gripper_occlusion_range", c.detection.gripper_occlusion_range);
    maybe(jd, "false_positive_rate", c.detection.false_positive_rate);
    maybe(jd, "carry_occlusion_factor", c.detection.carry_occlusion_factor);
    maybe(jd, "detection_rate_hz", c.detection.detection_rate_hz);
  }
  if (j.contains("gripper")) {
    const json& jg = j.at("gripper");
    maybe_vec3(jg, "arm_offset", c.gripper.arm_offset);
    maybe(jg, "jaw_span_open", c.gripper.jaw_span_open);
    maybe(jg, "extension_length", c.gripper.extension_length);
    maybe(jg, "jaw_depth", c.gripper.jaw_depth);
    maybe(jg, "jaw_half_height", c.gripper.jaw_half_height);
    maybe(jg, "body_drop", c.gripper.body_drop);
    maybe(jg, "h_grip_min", c.gripper.h_grip_min);
    maybe(jg, "h_grip_max", c.gripper.h_grip_max);
    maybe(jg, "slip_delay", c.gripper.slip_delay);
  }
  if (j.contains("tolerances")) {
    const json& jt = j.at("tolerances");
    maybe(jt, "lateral", c.tolerances.lateral);
    maybe(jt, "axial", c.tolerances.axial);
    maybe(jt, "vertical", c.tolerances.vertical);
    maybe(jt, "yaw_max", c.tolerances.yaw_max);
    maybe(jt, "z_fault_max", c.tolerances.z_fault_max);
  }
  if (j.contains("fault")) {
    const json& jf = j.at("fault");
    maybe(jf, "tracking_timeout", c.fault.tracking_timeout);
    maybe(jf, "z_error_max", c.fault.z_error_max);
    maybe(jf, "yaw_error_max", c.fault.yaw_error_max);
    maybe(jf, "grasp_check_delay", c.fault.grasp_check_delay);
    maybe(jf, "max_resets", c.fault.max_resets);
  }
  if (j.contains("waypoints")) {
    const json& jw = j.at("waypoints");
    maybe(jw, "pre_pick_offset", c.waypoints.pre_pick_offset);
    maybe(jw, "warmup_dwell", c.waypoints.warmup_dwell);
    maybe(jw, "pre_pick_dwell", c.waypoints.pre_pick_dwell);
    maybe(jw, "post_pick_rise", c.waypoints.post_pick_rise);
    maybe(jw, "post_pick_turn", c.waypoints.post_pick_turn);
    maybe(jw, "search_dwell", c.waypoints.search_dwell);
    maybe(jw, "search_step_down", c.waypoints.search_step_down);
    maybe(jw, "min_search_altitude", c.waypoints.min_search_altitude);
    maybe(jw, "pre_place_offset", c.waypoints.pre_place_offset);
    maybe(jw, "place_right_offset", c.waypoints.place_right_offset);
    maybe(jw, "instance_place_increment",
          c.waypoints.instance_place_increment);
    maybe(jw, "place_height_offset", c.waypoints.place_height_offset);
    maybe(jw, "place_settle_tol", c.waypoints.place_settle_tol);
    maybe(jw, "place_force_timeout", c.waypoints.place_force_timeout);
    maybe(jw, "release_dwell", c.waypoints.release_dwell);
    maybe(jw, "occlusion_range", c.waypoints.occlusion_range);
    maybe(jw, "replan_position_eps", c.waypoints.replan_position_eps);
    maybe(jw, "replan_yaw_eps", c.waypoints.replan_yaw_eps);
    maybe(jw, "goal_reach_tol", c.waypoints.goal_reach_tol);
  }
  if (j.contains("objects")) {
    const json& jo = j.at("objects");
    auto read_spec = [](const json& js, ObjectSpec& spec) {
      maybe(js, "diameter", spec.diameter);
      maybe(js, "height", spec.height);
      maybe(js, "topple_bump_speed", spec.topple_bump_speed);
      maybe(js, "is_toppleable", spec.is_toppleable);
    };
    if (jo.contains("can")) read_spec(jo.at("can"), c.objects.can);
    if (jo.contains("bottle")) read_spec(jo.at("bottle"), c.objects.bottle);
  }
  if (j.contains("scenario")) {
    const json& js = j.at("scenario");
    maybe(js, "starting_distance_min", c.scenario.starting_distance_min);
    maybe(js, "starting_distance_max", c.scenario.starting_distance_max);
    maybe(js, "cart_z", c.scenario.cart_z);
    maybe(js, "cart_half", c.scenario.cart_half);
    maybe(js, "table_z", c.scenario.table_z);
    maybe(js, "table_half", c.scenario.table_half);
    maybe(js, "destination_distance", c.scenario.destination_distance);
    maybe(js, "destination_lateral_jitter",
          c.scenario.destination_lateral_jitter);
    maybe(js, "target_lateral_jitter", c.scenario.target_lateral_jitter);
    maybe(js, "target_yaw_jitter", c.scenario.target_yaw_jitter);
    maybe(js, "obstructed_rotation_min", c.scenario.obstructed_rotation_min);
    maybe(js, "obstructed_rotation_max", c.scenario.obstructed_rotation_max);
    maybe(js, "occluded_fraction_min", c.scenario.occluded_fraction_min);
    maybe(js, "occluded_fraction_max", c.scenario.occluded_fraction_max);
    maybe(js, "clutter_occlusion", c.scenario.clutter_occlusion);
    maybe(js, "clutter_count", c.scenario.clutter_count);
    maybe(js, "instance_separation", c.scenario.instance_separation);
    maybe(js, "initial_yaw_jitter", c.scenario.initial_yaw_jitter);
    maybe(js, "destination_absent", c.scenario.destination_absent);
  }
  if (j.contains("trial")) {
    const json& jt = j.at("trial");
    maybe(jt, "timeout", c.trial.timeout);
    maybe(jt, "no_target_timeout", c.trial.no_target_timeout);
    maybe(jt, "place_radius", c.trial.place_radius);
    maybe(jt, "divergence_threshold", c.trial.divergence_threshold);
  }
  if (j.contains("inject")) {
    const json& ji = j.at("inject");
    maybe_vec3(ji, "detection_bias", c.inject.detection_bias);
    if (ji.contains("drift_step_after_pick")) {
      const json& jd = ji.at("drift_step_after_pick");
      c.inject.drift_step_after_pick =
          FlatPose(jd[0].get<double>(), jd[1].get<double>(),
                   jd[2].get<double>(), jd[3].get<double>());
    }
    maybe(ji, "magnetometer_fault", c.inject.magnetometer_fault);
  }
  return c;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return config_from_json(text);
}

void save_config(const SimConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open config file for writing: " + path);
  }
  out << config_to_json(config) << '\n';
}

}  // namespace graspsim
