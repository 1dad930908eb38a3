#include "rustforge/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "rustforge/errors.hpp"

namespace rustforge {

using nlohmann::json;

namespace {

constexpr std::string_view kBuiltinPrefix = "builtin:";

void check_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
  }
}

double number(const json& v, std::string_view where) {
  if (!v.is_number()) throw ConfigError(std::string(where) + ": expected a number");
  return v.get<double>();
}

int integer(const json& v, std::string_view where) {
  if (!v.is_number_integer()) throw ConfigError(std::string(where) + ": expected an integer");
  return v.get<int>();
}

std::string text(const json& v, std::string_view where) {
  if (!v.is_string()) throw ConfigError(std::string(where) + ": expected a string");
  return v.get<std::string>();
}

RangeSpec range(const json& v, std::string_view where) {
  if (v.is_number()) return RangeSpec::fixed(v.get<double>());
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError(std::string(where) + ": expected a number or [min, max]");
}

json range_json(const RangeSpec& r) { return json::array({r.min, r.max}); }

Rgb8 color(const json& v, std::string_view where) {
  if (!v.is_array() || v.size() != 3) throw ConfigError(std::string(where) + ": expected [r, g, b]");
  std::uint8_t c[3];
  for (std::size_t i = 0; i < 3; ++i) {
    const int x = integer(v[i], where);
    if (x < 0 || x > 255) throw ConfigError(std::string(where) + ": channel out of [0, 255]");
    c[i] = std::uint8_t(x);
  }
  return {c[0], c[1], c[2]};
}

std::string resolve(const std::string& p, const std::filesystem::path& base) {
  if (p.starts_with(kBuiltinPrefix) || base.empty() || std::filesystem::path(p).is_absolute()) return p;
  return (base / p).lexically_normal().string();
}

std::filesystem::path resolve_path(const std::filesystem::path& p, const std::filesystem::path& base) {
  if (base.empty() || p.is_absolute()) return p;
  return (base / p).lexically_normal();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void check_range(const RangeSpec& r, const std::string& name) {
  require(std::isfinite(r.min) && std::isfinite(r.max) && r.min <= r.max, name + ": need finite min <= max");
}

}  // namespace

void ForgeConfig::validate() const {
  require(images_per_class >= 1, "images_per_class must be a positive integer");
  require(resolution.width >= 3 && resolution.height >= 3, "resolution must be at least 3x3");
  check_range(camera_distance, "camera.distance");
  check_range(camera_azimuth, "camera.azimuth");
  check_range(camera_elevation, "camera.elevation");
  check_range(light_yaw, "light.yaw");
  check_range(light_pitch, "light.pitch");
  check_range(light_intensity, "light.intensity");
  check_range(ambient, "light.ambient");
  require(camera_distance.min > 0.0, "camera.distance must be positive");
  require(camera_elevation.min > -90.0 && camera_elevation.max < 90.0, "camera.elevation must lie in (-90, 90)");
  require(camera_fov_deg > 0.0 && camera_fov_deg < 180.0, "camera.fov must lie in (0, 180)");
  require(light_intensity.min >= 0.0, "light.intensity must be >= 0");
  require(ambient.min >= 0.0 && ambient.max <= 1.0, "light.ambient must lie in [0, 1]");
  require(cylinder.radius > 0.0 && cylinder.height > 0.0 && cylinder.segments >= 3,
          "cylinder needs radius > 0, height > 0, segments >= 3");
  require(!model.empty(), "model must be set");
  require(!base_texture.empty(), "base_texture must be set");
  require(texture_mode == TextureMode::Procedural || !import_directory.empty(),
          "textures.directory is required in import mode");
  require(train_fraction >= 0.0 && val_fraction >= 0.0 && std::abs(train_fraction + val_fraction - 1.0) < 1e-9,
          "split fractions must be non-negative and sum to 1");
  require(threads >= 1, "threads must be >= 1");
  require(!output_directory.empty(), "output must be set");
  try {
    quality.validate();
    stylize.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
}

ForgeConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(doc, "config",
             {"seed", "images_per_class", "resolution", "camera", "light", "model", "cylinder", "base_texture",
              "textures", "quality", "stylize", "output", "split", "background", "min_visible_pixels", "threads"});

  ForgeConfig c;
  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      throw ConfigError("seed: expected a non-negative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("images_per_class")) c.images_per_class = integer(doc["images_per_class"], "images_per_class");
  if (doc.contains("resolution")) {
    const json& r = doc["resolution"];
    if (!r.is_array() || r.size() != 2) throw ConfigError("resolution: expected [width, height]");
    c.resolution = {integer(r[0], "resolution"), integer(r[1], "resolution")};
  }
  if (doc.contains("camera")) {
    const json& cam = doc["camera"];
    check_keys(cam, "camera", {"distance", "azimuth", "elevation", "fov"});
    if (cam.contains("distance")) c.camera_distance = range(cam["distance"], "camera.distance");
    if (cam.contains("azimuth")) c.camera_azimuth = range(cam["azimuth"], "camera.azimuth");
    if (cam.contains("elevation")) c.camera_elevation = range(cam["elevation"], "camera.elevation");
    if (cam.contains("fov")) c.camera_fov_deg = number(cam["fov"], "camera.fov");
  }
  if (doc.contains("light")) {
    const json& l = doc["light"];
    check_keys(l, "light", {"yaw", "pitch", "intensity", "ambient"});
    if (l.contains("yaw")) c.light_yaw = range(l["yaw"], "light.yaw");
    if (l.contains("pitch")) c.light_pitch = range(l["pitch"], "light.pitch");
    if (l.contains("intensity")) c.light_intensity = range(l["intensity"], "light.intensity");
    if (l.contains("ambient")) c.ambient = range(l["ambient"], "light.ambient");
  }
  if (doc.contains("model")) c.model = resolve(text(doc["model"], "model"), base_dir);
  if (doc.contains("cylinder")) {
    const json& cy = doc["cylinder"];
    check_keys(cy, "cylinder", {"radius", "height", "segments"});
    if (cy.contains("radius")) c.cylinder.radius = number(cy["radius"], "cylinder.radius");
    if (cy.contains("height")) c.cylinder.height = number(cy["height"], "cylinder.height");
    if (cy.contains("segments")) c.cylinder.segments = integer(cy["segments"], "cylinder.segments");
  }
  if (doc.contains("base_texture")) c.base_texture = resolve(text(doc["base_texture"], "base_texture"), base_dir);
  if (doc.contains("textures")) {
    const json& t = doc["textures"];
    if (t.is_string()) {
      if (t.get<std::string>() != "procedural") throw ConfigError("textures: expected \"procedural\" or an object");
    } else {
      check_keys(t, "textures", {"mode", "directory"});
      const std::string mode = t.contains("mode") ? text(t["mode"], "textures.mode") : "procedural";
      if (mode == "procedural") {
        c.texture_mode = TextureMode::Procedural;
      } else if (mode == "import") {
        c.texture_mode = TextureMode::Import;
      } else {
        throw ConfigError("textures.mode: expected \"procedural\" or \"import\"");
      }
      if (t.contains("directory")) {
        c.import_directory = resolve_path(text(t["directory"], "textures.directory"), base_dir);
      }
    }
  }
  if (doc.contains("quality")) {
    const json& q = doc["quality"];
    check_keys(q, "quality", {"bands", "clutter_max", "laplacian_threshold", "hue"});
    if (q.contains("bands")) {
      const json& b = q["bands"];
      if (!b.is_object()) throw ConfigError("quality.bands: expected an object");
      for (const auto& [key, value] : b.items()) {
        const auto cls = class_from_name(key);
        if (!cls) throw ConfigError("quality.bands: unknown class '" + key + "'");
        const RangeSpec r = range(value, "quality.bands." + key);
        c.quality.bands[*cls] = {r.min, r.max};
      }
    }
    if (q.contains("clutter_max")) c.quality.clutter_max = number(q["clutter_max"], "quality.clutter_max");
    if (q.contains("laplacian_threshold")) {
      c.quality.laplacian_threshold = number(q["laplacian_threshold"], "quality.laplacian_threshold");
    }
    if (q.contains("hue")) {
      const json& h = q["hue"];
      check_keys(h, "quality.hue", {"hue_min", "hue_max", "saturation_min", "value_min", "value_max"});
      if (h.contains("hue_min")) c.quality.hue.hue_min = number(h["hue_min"], "quality.hue.hue_min");
      if (h.contains("hue_max")) c.quality.hue.hue_max = number(h["hue_max"], "quality.hue.hue_max");
      if (h.contains("saturation_min")) {
        c.quality.hue.saturation_min = number(h["saturation_min"], "quality.hue.saturation_min");
      }
      if (h.contains("value_min")) c.quality.hue.value_min = number(h["value_min"], "quality.hue.value_min");
      if (h.contains("value_max")) c.quality.hue.value_max = number(h["value_max"], "quality.hue.value_max");
    }
  }
  if (doc.contains("stylize")) {
    const json& s = doc["stylize"];
    check_keys(s, "stylize", {"strength", "detail_weight", "blur_radius", "epsilon"});
    if (s.contains("strength")) c.stylize.strength = number(s["strength"], "stylize.strength");
    if (s.contains("detail_weight")) c.stylize.detail_weight = number(s["detail_weight"], "stylize.detail_weight");
    if (s.contains("blur_radius")) c.stylize.blur_radius = integer(s["blur_radius"], "stylize.blur_radius");
    if (s.contains("epsilon")) c.stylize.epsilon = number(s["epsilon"], "stylize.epsilon");
  }
  if (doc.contains("output")) c.output_directory = resolve_path(text(doc["output"], "output"), base_dir);
  if (doc.contains("split")) {
    const json& s = doc["split"];
    check_keys(s, "split", {"train", "val"});
    if (s.contains("train")) c.train_fraction = number(s["train"], "split.train");
    if (s.contains("val")) c.val_fraction = number(s["val"], "split.val");
  }
  if (doc.contains("background")) c.background = color(doc["background"], "background");
  if (doc.contains("min_visible_pixels")) {
    const int m = integer(doc["min_visible_pixels"], "min_visible_pixels");
    if (m < 0) throw ConfigError("min_visible_pixels must be >= 0");
    c.min_visible_pixels = std::size_t(m);
  }
  if (doc.contains("threads")) c.threads = integer(doc["threads"], "threads");

  c.validate();
  return c;
}

ForgeConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

std::string to_json(const ForgeConfig& c) {
  json bands = json::object();
  for (RustClass cls : kAllRustClasses) {
    bands[std::string(class_slug(cls))] = json::array({c.quality.bands[cls].min, c.quality.bands[cls].max});
  }
  json textures = {{"mode", c.texture_mode == TextureMode::Import ? "import" : "procedural"}};
  if (!c.import_directory.empty()) textures["directory"] = c.import_directory.generic_string();

  const json doc = {
      {"seed", c.seed},
      {"images_per_class", c.images_per_class},
      {"resolution", {c.resolution.width, c.resolution.height}},
      {"camera",
       {{"distance", range_json(c.camera_distance)},
        {"azimuth", range_json(c.camera_azimuth)},
        {"elevation", range_json(c.camera_elevation)},
        {"fov", c.camera_fov_deg}}},
      {"light",
       {{"yaw", range_json(c.light_yaw)},
        {"pitch", range_json(c.light_pitch)},
        {"intensity", range_json(c.light_intensity)},
        {"ambient", range_json(c.ambient)}}},
      {"model", c.model},
      {"cylinder", {{"radius", c.cylinder.radius}, {"height", c.cylinder.height}, {"segments", c.cylinder.segments}}},
      {"base_texture", c.base_texture},
      {"textures", textures},
      {"quality",
       {{"bands", bands},
        {"clutter_max", c.quality.clutter_max},
        {"laplacian_threshold", c.quality.laplacian_threshold},
        {"hue",
         {{"hue_min", c.quality.hue.hue_min},
          {"hue_max", c.quality.hue.hue_max},
          {"saturation_min", c.quality.hue.saturation_min},
          {"value_min", c.quality.hue.value_min},
          {"value_max", c.quality.hue.value_max}}}}},
      {"stylize",
       {{"strength", c.stylize.strength},
        {"detail_weight", c.stylize.detail_weight},
        {"blur_radius", c.stylize.blur_radius},
        {"epsilon", c.stylize.epsilon}}},
      {"output", c.output_directory.generic_string()},
      {"split", {{"train", c.train_fraction}, {"val", c.val_fraction}}},
      {"background", {c.background.r, c.background.g, c.background.b}},
      {"min_visible_pixels", c.min_visible_pixels},
      {"threads", c.threads},
  };
  return doc.dump(2);
}

}  // namespace rustforge
