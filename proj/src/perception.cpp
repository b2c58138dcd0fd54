#include "graspsim/perception.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace graspsim {

const char* to_string(ObjectClass c) {
  switch (c) {
    case ObjectClass::TargetCan:
      return "target_can";
    case ObjectClass::TargetBottle:
      return "target_bottle";
    case ObjectClass::DestCan:
      return "dest_can";
    case ObjectClass::DestBottle:
      return "dest_bottle";
  }
  return "unknown";
}

std::optional<ObjectClass> object_class_from_string(const std::string& name) {
  if (name == "target_can") return ObjectClass::TargetCan;
  if (name == "target_bottle") return ObjectClass::TargetBottle;
  if (name == "dest_can") return ObjectClass::DestCan;
  if (name == "dest_bottle") return ObjectClass::DestBottle;
  return std::nullopt;
}

bool is_target_class(ObjectClass c) {
  return c == ObjectClass::TargetCan || c == ObjectClass::TargetBottle;
}

bool is_destination_class(ObjectClass c) {
  return c == ObjectClass::DestCan || c == ObjectClass::DestBottle;
}

double current_gain(const FilterSchedule& schedule, int step) {
  if (step >= schedule.decay_steps) {
    return schedule.desired_gain;
  }
  return 1.0 - (1.0 - schedule.desired_gain) *
                   (static_cast<double>(step) / schedule.decay_steps);
}

ObjectTrack filter_update(const ObjectTrack& track, const FlatPose& measurement,
                          const FilterSchedule& schedule, double now) {
  const double gain = current_gain(schedule, track.step_count);
  ObjectTrack updated = track;
  updated.estimate.x = track.estimate.x + gain * (measurement.x - track.estimate.x);
  updated.estimate.y = track.estimate.y + gain * (measurement.y - track.estimate.y);
  updated.estimate.z = track.estimate.z + gain * (measurement.z - track.estimate.z);
  const double yaw_innovation = wrap_angle(measurement.yaw - track.estimate.yaw);
  updated.estimate.yaw = wrap_angle(track.estimate.yaw + gain * yaw_innovation);
  updated.step_count = track.step_count + 1;
  updated.last_update = now;
  return updated;
}

AssociationResult associate(const FlatPose& detection_world,
                            ObjectClass object_class,
                            const std::vector<ObjectTrack>& tracks,
                            const AssociationConfig& config) {
  std::optional<TrackId> best;
  double best_distance = std::numeric_limits<double>::infinity();
  for (const ObjectTrack& track : tracks) {
    if (track.object_class != object_class) {
      continue;
    }
    const double d = track.estimate.distance_to(detection_world);
    if (d >= config.distance_threshold) {
      continue;
    }
    if (d < best_distance || (d == best_distance && best && track.id < *best)) {
      best = track.id;
      best_distance = d;
    }
  }
  return {best};
}

const ObjectTrack* TrackStore::find(TrackId id) const {
  for (const ObjectTrack& track : tracks) {
    if (track.id == id) {
      return &track;
    }
  }
  return nullptr;
}

void ingest(const DetectionEvent& detection, const FlatPose& vehicle_pose,
            const CameraIntrinsics& intrinsics,
            const CameraExtrinsics& extrinsics, TrackStore& store,
            const AssociationConfig& config, const FilterSchedule& schedule) {
  if (!in_frustum(detection.position, intrinsics)) {
    return;
  }
  const Eigen::Vector3d world =
      camera_to_world(detection.position, vehicle_pose, extrinsics);
  const FlatPose measurement(world.x(), world.y(), world.z(),
                             detection.yaw + vehicle_pose.yaw);

  const AssociationResult match =
      associate(measurement, detection.object_class, store.tracks, config);
  if (match.matched) {
    for (ObjectTrack& track : store.tracks) {
      if (track.id == *match.matched) {
        track = filter_update(track, measurement, schedule, detection.timestamp);
        return;
      }
    }
    return;
  }

  ObjectTrack fresh;
  fresh.id = store.next_id++;
  fresh.object_class = detection.object_class;
  fresh.estimate = measurement;  // placeholder, replaced by the gain-1 update
  store.tracks.push_back(
      filter_update(fresh, measurement, schedule, detection.timestamp));
}

const ObjectTrack* closest_track(const TrackStore& store,
                                 const FlatPose& vehicle_pose,
                                 ObjectClass object_class, double now,
                                 const AssociationConfig& config) {
  const ObjectTrack* best = nullptr;
  double best_distance = std::numeric_limits<double>::infinity();
  for (const ObjectTrack& track : store.tracks) {
    if (track.object_class != object_class) {
      continue;
    }
    if (now - track.last_update > config.staleness_timeout) {
      continue;
    }
    const double d = track.estimate.distance_to(vehicle_pose);
    if (d < best_distance) {
      best = &track;
      best_distance = d;
    }
  }
  return best;
}

void prune_stale(TrackStore& store, double now,
                 const AssociationConfig& config) {
  std::erase_if(store.tracks, [&](const ObjectTrack& track) {
    return now - track.last_update > config.staleness_timeout;
  });
}

void write_detection_log(std::ostream& out,
                         const std::vector<DetectionEvent>& detections) {
  out.precision(9);
  for (const DetectionEvent& det : detections) {
    out << det.timestamp << ' ' << to_string(det.object_class) << ' '
        << det.position.x() << ' ' << det.position.y() << ' '
        << det.position.z() << ' ' << det.yaw << '\n';
  }
}

std::vector<DetectionEvent> read_detection_log(std::istream& in) {
  std::vector<DetectionEvent> detections;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::istringstream fields(line);
    double timestamp = 0.0;
    std::string class_name;
    double x = 0.0, y = 0.0, z = 0.0, yaw = 0.0;
    if (!(fields >> timestamp >> class_name >> x >> y >> z >> yaw)) {
      throw std::runtime_error("malformed detection log line: " + line);
    }
    const auto object_class = object_class_from_string(class_name);
    if (!object_class) {
      throw std::runtime_error("unknown object class: " + class_name);
    }
    detections.push_back(
        {*object_class, Point3(x, y, z), yaw, timestamp});
  }
  return detections;
}

}  // namespace graspsim
