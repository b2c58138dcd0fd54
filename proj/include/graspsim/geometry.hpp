#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace graspsim {

// Camera-optical-frame point, z forward, x right, y down.
using Point3 = Eigen::Vector3d;

/// Wraps an angle to (-pi, pi]. The -pi boundary maps to +pi.
double wrap_angle(double theta);

/// Flat-output pose of the vehicle or an object: planar position,
/// altitude and heading. Yaw is kept normalized to (-pi, pi].
struct FlatPose {
  double x{0.0};
  double y{0.0};
  double z{0.0};
  double yaw{0.0};

  FlatPose() = default;
  FlatPose(double x_, double y_, double z_, double yaw_)
      : x(x_), y(y_), z(z_), yaw(wrap_angle(yaw_)) {}

  Eigen::Vector3d position() const { return {x, y, z}; }

  double distance_to(const FlatPose& other) const {
    return (position() - other.position()).norm();
  }
  double horizontal_distance_to(const FlatPose& other) const {
    return std::hypot(x - other.x, y - other.y);
  }
};

/// Rotate a vector from the body frame (x forward, y left, z up) into the
/// world frame given the body heading.
Eigen::Vector3d rotate_body_to_world(double yaw, const Eigen::Vector3d& v);
Eigen::Vector3d rotate_world_to_body(double yaw, const Eigen::Vector3d& v);

/// Pinhole camera parameters. Image bounds are half-open: a projection is
/// inside the image iff 0 <= u < width and 0 <= v < height.
struct CameraIntrinsics {
  double fx{600.0};
  double fy{600.0};
  double cx{320.0};
  double cy{240.0};
  int width{640};
  int height{480};

  bool valid() const {
    return fx > 0.0 && fy > 0.0 && cx > 0.0 && cx < width && cy > 0.0 &&
           cy < height;
  }
};

/// Rigid mount of the camera on the vehicle body. `translation` is the
/// optical center expressed in the body frame; `rotation` is an extra mount
/// rotation applied in the optical frame on top of the canonical
/// forward-looking orientation (optical z along body x, optical x along
/// -body y, optical y along -body z). Identity extrinsics therefore mean a
/// forward-looking camera at the body origin.
struct CameraExtrinsics {
  Eigen::Vector3d translation{Eigen::Vector3d::Zero()};
  Eigen::Quaterniond rotation{Eigen::Quaterniond::Identity()};
};

struct PixelCoord {
  double u{0.0};
  double v{0.0};
};

struct NonPositiveDepth : std::domain_error {
  NonPositiveDepth() : std::domain_error("point depth is not positive") {}
};

/// Projects a camera-frame point to pixel coordinates:
///   (u, v) = ((fx*x + cx*z) / z, (fy*y + cy*z) / z)
/// Throws NonPositiveDepth if z <= 0; callers that merely need a validity
/// answer should use in_frustum instead.
PixelCoord project(const Point3& point, const CameraIntrinsics& intrinsics);

/// True iff the point has positive depth and projects inside the image.
bool in_frustum(const Point3& point, const CameraIntrinsics& intrinsics);

/// Fixed permutation from body axes to the canonical optical axes.
Eigen::Matrix3d body_to_optical_axes();

/// Expresses a world-frame point in the camera optical frame for a vehicle
/// at `vehicle_pose` with the given mount.
Point3 world_to_camera(const Eigen::Vector3d& point_world,
                       const FlatPose& vehicle_pose,
                       const CameraExtrinsics& extrinsics);

/// Expresses a world-frame object pose in the camera optical frame. The
/// returned point is the object position; relative yaw (object yaw minus
/// vehicle yaw) travels alongside in DetectionEvent.
Point3 body_to_camera(const FlatPose& pose_world, const FlatPose& vehicle_pose,
                      const CameraExtrinsics& extrinsics);

/// Inverse of world_to_camera.
Eigen::Vector3d camera_to_world(const Point3& point_camera,
                                const FlatPose& vehicle_pose,
                                const CameraExtrinsics& extrinsics);

}  // namespace graspsim
