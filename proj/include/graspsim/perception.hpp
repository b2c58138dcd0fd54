#pragma once

#include "graspsim/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace graspsim {

enum class ObjectClass : uint8_t {
  TargetCan = 0,
  TargetBottle = 1,
  DestCan = 2,
  DestBottle = 3,
};

const char* to_string(ObjectClass c);
std::optional<ObjectClass> object_class_from_string(const std::string& name);

bool is_target_class(ObjectClass c);
bool is_destination_class(ObjectClass c);

/// One raw object detection as the onboard detector would report it:
/// camera-frame position plus yaw relative to the vehicle heading.
struct DetectionEvent {
  ObjectClass object_class{ObjectClass::TargetCan};
  Point3 position{Point3::Zero()};  // camera optical frame, meters
  double yaw{0.0};                  // object yaw minus vehicle yaw, radians
  double timestamp{0.0};            // seconds
};

/// Gain schedule for the exponential pose filter: the gain starts at 1,
/// decays linearly over `decay_steps` updates and then stays at
/// `desired_gain`.
struct FilterSchedule {
  double desired_gain{0.1};  // gamma_d, in (0, 1]
  int decay_steps{10};       // T, >= 1
};

/// gamma_t = 1 - (1 - gamma_d) * t / T for t < T, gamma_d afterwards.
double current_gain(const FilterSchedule& schedule, int step);

using TrackId = uint32_t;

/// Filtered world-frame estimate of one object.
struct ObjectTrack {
  TrackId id{0};
  ObjectClass object_class{ObjectClass::TargetCan};
  FlatPose estimate{};
  int step_count{0};       // accepted measurements so far
  double last_update{0.0};  // seconds
};

struct AssociationConfig {
  double distance_threshold{0.30};  // meters, new-vs-known object split
  double staleness_timeout{2.0};    // seconds, track considered lost
};

/// Applies one filter step to `track` given a world-frame measurement.
/// Positions follow p_t = p_{t-1} + gamma_t * (m_t - p_{t-1}); yaw uses the
/// wrapped shortest-path innovation and is re-normalized.
ObjectTrack filter_update(const ObjectTrack& track, const FlatPose& measurement,
                          const FilterSchedule& schedule, double now);

struct AssociationResult {
  std::optional<TrackId> matched;  // empty means a new track
};

/// Nearest same-class track closer than the threshold wins; ties break
/// toward the lowest track id.
AssociationResult associate(const FlatPose& detection_world,
                            ObjectClass object_class,
                            const std::vector<ObjectTrack>& tracks,
                            const AssociationConfig& config);

/// Owns all tracks of one mission. Sequential use only.
struct TrackStore {
  std::vector<ObjectTrack> tracks;
  TrackId next_id{0};

  const ObjectTrack* find(TrackId id) const;
};

/// Full per-detection pipeline: frustum validity check, camera-to-world
/// transform using the vehicle pose estimate, association and filter update
/// (or track creation). Invalid detections leave the store untouched.
void ingest(const DetectionEvent& detection, const FlatPose& vehicle_pose,
            const CameraIntrinsics& intrinsics,
            const CameraExtrinsics& extrinsics, TrackStore& store,
            const AssociationConfig& config, const FilterSchedule& schedule);

/// Non-stale track of the wanted class nearest to the vehicle, or null.
const ObjectTrack* closest_track(const TrackStore& store,
                                 const FlatPose& vehicle_pose,
                                 ObjectClass object_class, double now,
                                 const AssociationConfig& config);

/// Drops tracks with now - last_update strictly above the staleness timeout.
void prune_stale(TrackStore& store, double now, const AssociationConfig& config);

/// Plain-text detection log, one record per line:
///   timestamp object_class x y z yaw
/// with camera-frame coordinates in meters and yaw in radians.
void write_detection_log(std::ostream& out,
                         const std::vector<DetectionEvent>& detections);
std::vector<DetectionEvent> read_detection_log(std::istream& in);

}  // namespace graspsim
