#pragma once

#include "graspsim/geometry.hpp"

#include <array>
#include <stdexcept>

namespace graspsim {

/// Instantaneous flat state used as a trajectory boundary condition.
struct MotionState {
  FlatPose pose{};
  Eigen::Vector3d velocity{Eigen::Vector3d::Zero()};
  Eigen::Vector3d acceleration{Eigen::Vector3d::Zero()};
  double yaw_rate{0.0};
};

/// Reference sample produced by evaluating a trajectory.
struct ReferencePoint {
  FlatPose pose{};
  Eigen::Vector3d velocity{Eigen::Vector3d::Zero()};
  Eigen::Vector3d acceleration{Eigen::Vector3d::Zero()};
  double yaw_rate{0.0};
};

struct DegenerateDuration : std::invalid_argument {
  DegenerateDuration()
      : std::invalid_argument("trajectory duration must be positive") {}
};

/// Degree-9 polynomial per flat axis (x, y, z, yaw), parameterized on
/// normalized time tau = t / duration to keep the boundary system
/// well-conditioned. Position and derivatives 1-4 are pinned at both ends:
/// goal derivatives are zero, so the motion is rest-to-rest unless planned
/// mid-flight. The yaw axis is solved on an unwrapped goal reached by the
/// shortest angular path.
struct PolynomialTrajectory {
  static constexpr int kCoefficients = 10;
  using AxisCoefficients = std::array<double, kCoefficients>;

  std::array<AxisCoefficients, 4> axes{};  // x, y, z, yaw (unwrapped)
  double duration{0.0};

  /// Value of the `order`-th time derivative of one axis at time t
  /// (unclamped, order 0-4). Axis 3 yields unwrapped yaw.
  double axis_derivative(int axis, double t, int order) const;
};

PolynomialTrajectory plan_trajectory(const MotionState& start,
                                     const FlatPose& goal, double duration);

/// Samples the trajectory with t clamped to [0, duration]; the goal state is
/// held after the end.
ReferencePoint evaluate(const PolynomialTrajectory& trajectory, double t);

/// Leg duration policy: distance over cruise speed, floored. Yaw-dominant
/// legs are additionally stretched so the heading sweep stays trackable.
struct TrajectoryTiming {
  double cruise_speed{0.25};  // m/s
  double min_duration{1.5};   // s
  double yaw_cruise{0.9};     // rad/s
};

double plan_duration(double distance, const TrajectoryTiming& timing);

}  // namespace graspsim
