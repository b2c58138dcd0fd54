#include "graspsim/controller.hpp"

#include <algorithm>
#include <cmath>

namespace graspsim {

RpytCommand track(const ReferencePoint& reference, const MotionState& vehicle,
                  const ControllerGains& gains) {
  const Eigen::Vector3d position_error =
      reference.pose.position() - vehicle.pose.position();
  const Eigen::Vector3d velocity_error = reference.velocity - vehicle.velocity;

  const Eigen::Vector3d desired_acceleration =
      reference.acceleration + gains.kp.cwiseProduct(position_error) +
      gains.kd.cwiseProduct(velocity_error);

  // Specific force the body z axis must provide, world frame.
  const Eigen::Vector3d force(desired_acceleration.x(),
                              desired_acceleration.y(),
                              desired_acceleration.z() + gains.gravity);

  const double yaw = vehicle.pose.yaw;
  const double f_forward =
      std::cos(yaw) * force.x() + std::sin(yaw) * force.y();
  const double f_left = -std::sin(yaw) * force.x() + std::cos(yaw) * force.y();
  const double f_up = std::max(force.z(), 1e-6);

  RpytCommand cmd;
  cmd.pitch = std::clamp(std::atan2(f_forward, f_up), -gains.tilt_limit,
                         gains.tilt_limit);
  cmd.roll = std::clamp(std::atan2(-f_left, std::hypot(f_forward, f_up)),
                        -gains.tilt_limit, gains.tilt_limit);
  cmd.yaw_rate =
      reference.yaw_rate + gains.kp_yaw * wrap_angle(reference.pose.yaw - yaw);
  cmd.thrust =
      std::clamp(force.norm() * gains.mass / gains.max_thrust, 0.0, 1.0);
  return cmd;
}

}  // namespace graspsim
