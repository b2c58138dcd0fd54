#include "graspsim/trajectory.hpp"

#include <algorithm>

namespace graspsim {

namespace {

// Falling factorial k! / (k - m)!, the derivative weight of tau^k.
double derivative_weight(int k, int m) {
  double w = 1.0;
  for (int i = 0; i < m; ++i) {
    w *= static_cast<double>(k - i);
  }
  return w;
}

// Solves one axis on normalized time. Boundary rows m = 0..4 at tau = 0 and
// tau = 1; RHS derivatives are pre-scaled by duration^m.
PolynomialTrajectory::AxisCoefficients solve_axis(
    const std::array<double, 5>& start, const std::array<double, 5>& goal,
    double duration) {
  constexpr int n = PolynomialTrajectory::kCoefficients;
  Eigen::Matrix<double, n, n> system = Eigen::Matrix<double, n, n>::Zero();
  Eigen::Matrix<double, n, 1> rhs;

  double scale = 1.0;
  for (int m = 0; m < 5; ++m) {
    system(m, m) = derivative_weight(m, m);  // only tau^m survives at tau = 0
    rhs(m) = start[m] * scale;
    for (int k = m; k < n; ++k) {
      system(5 + m, k) = derivative_weight(k, m);  // tau = 1
    }
    rhs(5 + m) = goal[m] * scale;
    scale *= duration;
  }

  const Eigen::Matrix<double, n, 1> coeffs =
      system.colPivHouseholderQr().solve(rhs);
  PolynomialTrajectory::AxisCoefficients out{};
  for (int k = 0; k < n; ++k) {
    out[k] = coeffs(k);
  }
  return out;
}

}  // namespace

double PolynomialTrajectory::axis_derivative(int axis, double t,
                                             int order) const {
  const double tau = t / duration;
  const AxisCoefficients& c = axes[axis];
  double value = 0.0;
  double tau_pow = 1.0;
  for (int k = order; k < kCoefficients; ++k) {
    value += c[k] * derivative_weight(k, order) * tau_pow;
    tau_pow *= tau;
  }
  double scale = 1.0;
  for (int i = 0; i < order; ++i) {
    scale /= duration;
  }
  return value * scale;
}

PolynomialTrajectory plan_trajectory(const MotionState& start,
                                     const FlatPose& goal, double duration) {
  if (!(duration > 0.0)) {
    throw DegenerateDuration{};
  }

  PolynomialTrajectory trajectory;
  trajectory.duration = duration;

  const std::array<double, 4> start_pos = {start.pose.x, start.pose.y,
                                           start.pose.z, start.pose.yaw};
  const std::array<double, 4> start_vel = {start.velocity.x(),
                                           start.velocity.y(),
                                           start.velocity.z(), start.yaw_rate};
  const std::array<double, 4> start_acc = {start.acceleration.x(),
                                           start.acceleration.y(),
                                           start.acceleration.z(), 0.0};
  // Goal yaw lifted next to the start so the sweep takes the short way round.
  const double goal_yaw =
      start.pose.yaw + wrap_angle(goal.yaw - start.pose.yaw);
  const std::array<double, 4> goal_pos = {goal.x, goal.y, goal.z, goal_yaw};

  for (int axis = 0; axis < 4; ++axis) {
    const std::array<double, 5> bc_start = {start_pos[axis], start_vel[axis],
                                            start_acc[axis], 0.0, 0.0};
    const std::array<double, 5> bc_goal = {goal_pos[axis], 0.0, 0.0, 0.0, 0.0};
    trajectory.axes[axis] = solve_axis(bc_start, bc_goal, duration);
  }
  return trajectory;
}

ReferencePoint evaluate(const PolynomialTrajectory& trajectory, double t) {
  const double clamped = std::clamp(t, 0.0, trajectory.duration);
  ReferencePoint ref;
  std::array<double, 4> value{}, d1{}, d2{};
  for (int axis = 0; axis < 4; ++axis) {
    value[axis] = trajectory.axis_derivative(axis, clamped, 0);
    d1[axis] = trajectory.axis_derivative(axis, clamped, 1);
    d2[axis] = trajectory.axis_derivative(axis, clamped, 2);
  }
  ref.pose = FlatPose(value[0], value[1], value[2], value[3]);
  ref.velocity = {d1[0], d1[1], d1[2]};
  ref.acceleration = {d2[0], d2[1], d2[2]};
  ref.yaw_rate = d1[3];
  return ref;
}

double plan_duration(double distance, const TrajectoryTiming& timing) {
  return std::max(timing.min_duration, distance / timing.cruise_speed);
}

}  // namespace graspsim
