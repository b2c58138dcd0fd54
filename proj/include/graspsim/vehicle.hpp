#pragma once

#include "graspsim/controller.hpp"
#include "graspsim/rng.hpp"

namespace graspsim {

/// Ground-truth plant state. Roll/pitch are the achieved tilt angles behind
/// the first-order actuator lag.
struct VehicleState {
  FlatPose pose{};
  Eigen::Vector3d velocity{Eigen::Vector3d::Zero()};
  double yaw_rate{0.0};
  double roll{0.0};
  double pitch{0.0};

  MotionState motion() const {
    MotionState m;
    m.pose = pose;
    m.velocity = velocity;
    m.yaw_rate = yaw_rate;
    return m;
  }
};

struct PlantParams {
  double mass{1.67};        // kg
  double gravity{9.81};     // m/s^2
  double max_thrust{36.04}; // N
  double actuator_tau{0.06};  // s, roll/pitch first-order lag
};

/// Semi-implicit Euler step of the flat quadrotor model: horizontal
/// acceleration g*tan(tilt) resolved by yaw, vertical from normalized
/// thrust, yaw integrating the commanded rate. Ground contact clamps z >= 0
/// and zeroes downward velocity. dt must lie in (0, 0.05].
VehicleState step_dynamics(const VehicleState& state, const RpytCommand& cmd,
                           double dt, const PlantParams& params);

enum class MagnetometerHealth { Healthy, Faulted };

/// Fused state estimate published to the controller and the perception
/// pipeline: truth plus a random-walk drift plus white noise.
struct EstimatorState {
  FlatPose estimate{};
  Eigen::Vector3d velocity_estimate{Eigen::Vector3d::Zero()};
  FlatPose drift{};
  MagnetometerHealth magnetometer{MagnetometerHealth::Healthy};

  MotionState motion() const {
    MotionState m;
    m.pose = estimate;
    m.velocity = velocity_estimate;
    return m;
  }
};

struct EstimatorConfig {
  Eigen::Vector3d drift_sigma{0.002, 0.002, 0.0015};  // m per sqrt(s)
  double drift_sigma_yaw{0.002};                      // rad per sqrt(s)
  Eigen::Vector3d noise_sigma{0.003, 0.003, 0.003};   // m, white
  double noise_sigma_yaw{0.004};                      // rad, white
  double velocity_noise_sigma{0.01};                  // m/s, white
  double sharp_motion_factor{4.0};  // drift multiplier during aggressive motion
  double yawrate_threshold{0.6};    // rad/s
  double tilt_threshold{0.22};      // rad
  double mag_fault_yaw_sigma{0.02}; // extra yaw walk when magnetometer faulted
};

/// Advances the drift random walk by dt and publishes a fresh estimate.
/// With an all-zero config the estimate is an exact copy of the truth.
EstimatorState estimate(const VehicleState& state, const EstimatorState& est,
                        const EstimatorConfig& config, double dt, Rng& rng);

}  // namespace graspsim
