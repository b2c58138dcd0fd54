#include "graspsim/vehicle.hpp"

#include <cassert>
#include <cmath>

namespace graspsim {

VehicleState step_dynamics(const VehicleState& state, const RpytCommand& cmd,
                           double dt, const PlantParams& params) {
  assert(dt > 0.0 && dt <= 0.05);

  VehicleState next = state;

  const double alpha = 1.0 - std::exp(-dt / params.actuator_tau);
  next.roll += alpha * (cmd.roll - state.roll);
  next.pitch += alpha * (cmd.pitch - state.pitch);
  next.yaw_rate = cmd.yaw_rate;

  const double a_forward = params.gravity * std::tan(next.pitch);
  const double a_left = -params.gravity * std::tan(next.roll);
  const Eigen::Vector3d a_world =
      rotate_body_to_world(state.pose.yaw, {a_forward, a_left, 0.0}) +
      Eigen::Vector3d(0.0, 0.0,
                      cmd.thrust * params.max_thrust / params.mass -
                          params.gravity);

  next.velocity += a_world * dt;
  next.pose.x += next.velocity.x() * dt;
  next.pose.y += next.velocity.y() * dt;
  next.pose.z += next.velocity.z() * dt;
  next.pose.yaw = wrap_angle(state.pose.yaw + next.yaw_rate * dt);

  if (next.pose.z <= 0.0) {
    next.pose.z = 0.0;
    if (next.velocity.z() < 0.0) {
      next.velocity.z() = 0.0;
    }
  }
  return next;
}

EstimatorState estimate(const VehicleState& state, const EstimatorState& est,
                        const EstimatorConfig& config, double dt, Rng& rng) {
  EstimatorState next = est;

  double factor = 1.0;
  const double tilt = std::max(std::abs(state.roll), std::abs(state.pitch));
  if (std::abs(state.yaw_rate) > config.yawrate_threshold ||
      tilt > config.tilt_threshold) {
    factor = config.sharp_motion_factor;
  }

  const double sq = std::sqrt(dt);
  next.drift.x += gauss(rng, config.drift_sigma.x() * factor * sq);
  next.drift.y += gauss(rng, config.drift_sigma.y() * factor * sq);
  next.drift.z += gauss(rng, config.drift_sigma.z() * factor * sq);
  double yaw_walk_sigma = config.drift_sigma_yaw * factor;
  if (est.magnetometer == MagnetometerHealth::Faulted) {
    yaw_walk_sigma += config.mag_fault_yaw_sigma;
  }
  next.drift.yaw = wrap_angle(next.drift.yaw + gauss(rng, yaw_walk_sigma * sq));

  next.estimate.x = state.pose.x + next.drift.x +
                    gauss(rng, config.noise_sigma.x());
  next.estimate.y = state.pose.y + next.drift.y +
                    gauss(rng, config.noise_sigma.y());
  next.estimate.z = state.pose.z + next.drift.z +
                    gauss(rng, config.noise_sigma.z());
  next.estimate.yaw = wrap_angle(state.pose.yaw + next.drift.yaw +
                                 gauss(rng, config.noise_sigma_yaw));
  next.velocity_estimate =
      state.velocity + Eigen::Vector3d(gauss(rng, config.velocity_noise_sigma),
                                       gauss(rng, config.velocity_noise_sigma),
                                       gauss(rng, config.velocity_noise_sigma));
  return next;
}

}  // namespace graspsim
