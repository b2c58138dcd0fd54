#include "graspsim/scene.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace graspsim {

using nlohmann::json;

std::string scene_to_json(const Scene& scene) {
  json j;
  j["surfaces"] = json::array();
  for (const Surface& s : scene.surfaces) {
    j["surfaces"].push_back({{"center_x", s.center_x},
                             {"center_y", s.center_y},
                             {"z", s.z},
                             {"half_x", s.half_x},
                             {"half_y", s.half_y}});
  }
  j["objects"] = json::array();
  for (const SceneObject& o : scene.objects) {
    j["objects"].push_back({{"class", to_string(o.object_class)},
                            {"x", o.pose.x},
                            {"y", o.pose.y},
                            {"z", o.pose.z},
                            {"yaw", o.pose.yaw},
                            {"diameter", o.diameter},
                            {"height", o.height},
                            {"occluded_fraction", o.occluded_fraction},
                            {"standing_surface_z", o.standing_surface_z},
                            {"is_toppleable", o.is_toppleable},
                            {"topple_bump_speed", o.topple_bump_speed},
                            {"is_clutter", o.is_clutter},
                            {"confusable_class", to_string(o.confusable_class)}});
  }
  return j.dump(2);
}

Scene scene_from_json(const std::string& text) {
  const json j = json::parse(text);
  Scene scene;
  for (const json& js : j.value("surfaces", json::array())) {
    Surface s;
    s.center_x = js.value("center_x", 0.0);
    s.center_y = js.value("center_y", 0.0);
    s.z = js.value("z", 0.0);
    s.half_x = js.value("half_x", 0.5);
    s.half_y = js.value("half_y", 0.5);
    scene.surfaces.push_back(s);
  }
  for (const json& jo : j.value("objects", json::array())) {
    SceneObject o;
    const auto cls = object_class_from_string(jo.at("class"));
    if (!cls) {
      throw std::runtime_error("unknown object class in scene file");
    }
    o.object_class = *cls;
    o.pose = FlatPose(jo.value("x", 0.0), jo.value("y", 0.0),
                      jo.value("z", 0.0), jo.value("yaw", 0.0));
    o.diameter = jo.value("diameter", 0.065);
    o.height = jo.value("height", 0.10);
    o.occluded_fraction = jo.value("occluded_fraction", 0.0);
    o.standing_surface_z = jo.value("standing_surface_z", 0.0);
    o.is_toppleable = jo.value("is_toppleable", true);
    o.topple_bump_speed = jo.value("topple_bump_speed", 0.30);
    o.is_clutter = jo.value("is_clutter", false);
    if (jo.contains("confusable_class")) {
      const auto confusable =
          object_class_from_string(jo.at("confusable_class"));
      if (!confusable) {
        throw std::runtime_error("unknown confusable class in scene file");
      }
      o.confusable_class = *confusable;
    }
    scene.objects.push_back(o);
  }
  return scene;
}

void save_scene(const Scene& scene, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open scene file for writing: " + path);
  }
  out << scene_to_json(scene) << '\n';
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open scene file: " + path);
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return scene_from_json(text);
}

}  // namespace graspsim
