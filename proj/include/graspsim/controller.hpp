#pragma once

#include "graspsim/trajectory.hpp"

namespace graspsim {

/// Attitude-level setpoint handed to the low-level plant. Positive pitch
/// tilts the body toward +x (accelerates forward), positive roll toward -y.
struct RpytCommand {
  double roll{0.0};      // radians
  double pitch{0.0};     // radians
  double yaw_rate{0.0};  // radians/s
  double thrust{0.0};    // normalized, [0, 1]
};

struct ControllerGains {
  Eigen::Vector3d kp{4.0, 4.0, 4.0};  // 1/s^2
  Eigen::Vector3d kd{4.0, 4.0, 4.0};  // 1/s
  double kp_yaw{2.0};                 // 1/s
  double tilt_limit{0.35};            // radians
  double mass{1.67};                  // kg
  double gravity{9.81};               // m/s^2
  double max_thrust{36.04};           // N (thrust-to-weight ~2.2)

  double hover_thrust() const { return mass * gravity / max_thrust; }
};

/// PD + feedforward acceleration command mapped to roll/pitch/yaw-rate/thrust
/// through the flat model: the desired specific force is tilted onto the
/// body z axis given the current yaw and saturated to the tilt limit.
RpytCommand track(const ReferencePoint& reference, const MotionState& vehicle,
                  const ControllerGains& gains);

}  // namespace graspsim
