#include "graspsim/geometry.hpp"

#include <numbers>

namespace graspsim {

namespace {
constexpr double kPi = std::numbers::pi;
}

double wrap_angle(double theta) {
  double wrapped = std::remainder(theta, 2.0 * kPi);
  if (wrapped <= -kPi) {
    wrapped = kPi;
  }
  return wrapped;
}

Eigen::Vector3d rotate_body_to_world(double yaw, const Eigen::Vector3d& v) {
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y(), v.z()};
}

Eigen::Vector3d rotate_world_to_body(double yaw, const Eigen::Vector3d& v) {
  return rotate_body_to_world(-yaw, v);
}

PixelCoord project(const Point3& point, const CameraIntrinsics& intrinsics) {
  if (!(point.z() > 0.0)) {
    throw NonPositiveDepth{};
  }
  const double inv_z = 1.0 / point.z();
  return {(intrinsics.fx * point.x() + intrinsics.cx * point.z()) * inv_z,
          (intrinsics.fy * point.y() + intrinsics.cy * point.z()) * inv_z};
}

bool in_frustum(const Point3& point, const CameraIntrinsics& intrinsics) {
  if (!(point.z() > 0.0)) {
    return false;
  }
  const PixelCoord px = project(point, intrinsics);
  return px.u >= 0.0 && px.u < intrinsics.width && px.v >= 0.0 &&
         px.v < intrinsics.height;
}

Eigen::Matrix3d body_to_optical_axes() {
  // optical x = -body y (right), optical y = -body z (down),
  // optical z = body x (forward)
  Eigen::Matrix3d p;
  p << 0.0, -1.0, 0.0,  //
      0.0, 0.0, -1.0,   //
      1.0, 0.0, 0.0;
  return p;
}

Point3 world_to_camera(const Eigen::Vector3d& point_world,
                       const FlatPose& vehicle_pose,
                       const CameraExtrinsics& extrinsics) {
  const Eigen::Vector3d in_body = rotate_world_to_body(
      vehicle_pose.yaw, point_world - vehicle_pose.position());
  const Eigen::Vector3d in_mount =
      body_to_optical_axes() * (in_body - extrinsics.translation);
  return extrinsics.rotation.conjugate() * in_mount;
}

Point3 body_to_camera(const FlatPose& pose_world, const FlatPose& vehicle_pose,
                      const CameraExtrinsics& extrinsics) {
  return world_to_camera(pose_world.position(), vehicle_pose, extrinsics);
}

Eigen::Vector3d camera_to_world(const Point3& point_camera,
                                const FlatPose& vehicle_pose,
                                const CameraExtrinsics& extrinsics) {
  const Eigen::Vector3d in_mount = extrinsics.rotation * point_camera;
  const Eigen::Vector3d in_body =
      body_to_optical_axes().transpose() * in_mount + extrinsics.translation;
  return rotate_body_to_world(vehicle_pose.yaw, in_body) +
         vehicle_pose.position();
}

}  // namespace graspsim
