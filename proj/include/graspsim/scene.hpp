#pragma once

#include "graspsim/geometry.hpp"
#include "graspsim/perception.hpp"

#include <string>
#include <vector>

namespace graspsim {

/// Axis-aligned horizontal surface (cart, table, box) objects stand on.
struct Surface {
  double center_x{0.0};
  double center_y{0.0};
  double z{0.0};       // top of the surface, meters
  double half_x{0.5};
  double half_y{0.5};

  bool contains(double x, double y) const {
    return std::abs(x - center_x) <= half_x && std::abs(y - center_y) <= half_y;
  }
};

/// One physical object in the world. `pose` is the center of the object;
/// clutter items never emit true detections but can emit class-confusable
/// false positives.
struct SceneObject {
  ObjectClass object_class{ObjectClass::TargetCan};
  FlatPose pose{};
  double diameter{0.065};
  double height{0.10};
  double occluded_fraction{0.0};
  double standing_surface_z{0.0};
  bool is_toppleable{true};
  double topple_bump_speed{0.30};  // horizontal contact speed that tips it, m/s
  bool is_clutter{false};
  ObjectClass confusable_class{ObjectClass::TargetCan};

  // runtime state
  bool toppled{false};
  bool held{false};

  double base_z() const { return pose.z - 0.5 * height; }
  double top_z() const { return pose.z + 0.5 * height; }
};

struct Scene {
  std::vector<Surface> surfaces;
  std::vector<SceneObject> objects;
};

/// JSON scene description (documented in the README): round-trips every
/// field above except the runtime state.
std::string scene_to_json(const Scene& scene);
Scene scene_from_json(const std::string& text);
void save_scene(const Scene& scene, const std::string& path);
Scene load_scene(const std::string& path);

}  // namespace graspsim
