#include "rustforge/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <thread>

#include "json.hpp"
#include "rustforge/errors.hpp"
#include "rustforge/png_io.hpp"
#include "rustforge/rng.hpp"
#include "rustforge/stylize.hpp"

namespace rustforge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr ObjectId kObjectId = 1;

std::string scene_tag(RustClass c) { return "scene/" + std::string(class_slug(c)); }
std::string split_tag(RustClass c) { return "split/" + std::string(class_slug(c)); }

std::string slot_stem(RustClass c, std::uint64_t index) {
  char digits[24];
  std::snprintf(digits, sizeof digits, "%05llu", static_cast<unsigned long long>(index));
  return std::string(class_slug(c)) + "_" + digits;
}

std::shared_ptr<const Mesh> load_model(const ForgeConfig& c) {
  if (c.model == "builtin:cylinder") {
    return std::make_shared<const Mesh>(make_cylinder(c.cylinder.radius, c.cylinder.height, c.cylinder.segments));
  }
  if (c.model.starts_with("builtin:")) throw ConfigError("unknown builtin model '" + c.model + "'");
  auto mesh = std::make_shared<const Mesh>(load_obj_file(c.model));
  if (mesh->triangles.empty()) throw ConfigError("model '" + c.model + "' has no faces");
  return mesh;
}

std::shared_ptr<const TextureImage> load_base(const ForgeConfig& c) {
  if (c.base_texture == "builtin:metal") return std::make_shared<const TextureImage>(make_builtin_base_texture());
  if (c.base_texture.starts_with("builtin:")) throw ConfigError("unknown builtin texture '" + c.base_texture + "'");
  return std::make_shared<const TextureImage>(read_png(c.base_texture));
}

}  // namespace

std::string_view split_name(Split s) { return s == Split::Train ? "train" : "val"; }

ForgeContext::ForgeContext(ForgeConfig config) : config_(std::move(config)) {
  config_.validate();
  mesh_ = load_model(config_);
  base_ = load_base(config_);
  bounds_ = mesh_aabb(*mesh_);

  if (config_.texture_mode != TextureMode::Import) return;
  if (!fs::is_directory(config_.import_directory)) {
    throw ConfigError("texture import directory '" + config_.import_directory.string() + "' does not exist");
  }
  for (RustClass cls : kAllRustClasses) {
    fs::path dir = config_.import_directory / class_slug(cls);
    if (!fs::is_directory(dir)) dir = config_.import_directory / class_name(cls);
    if (!fs::is_directory(dir)) {
      // The no-rust class may reuse the base texture as its only texture.
      if (cls == RustClass::Default) continue;
      throw ConfigError("missing texture directory for class '" + std::string(class_name(cls)) + "' under " +
                        config_.import_directory.string());
    }
    ImportResult imported = import_textures(dir, cls, /*recursive=*/true);
    auto& log = import_log_[std::size_t(class_id(cls))];
    auto& failures = import_failures_[std::size_t(class_id(cls))];
    failures.insert(failures.end(), imported.failures.begin(), imported.failures.end());
    for (ImportedTexture& t : imported.textures) {
      Verdict v = accept_texture(t.image, cls, config_.quality);
      log.push_back({0, t.provenance.file_name, v});
      if (v.accepted) accepted_[std::size_t(class_id(cls))].push_back(std::move(t));
    }
  }
}

const std::vector<ImportedTexture>& ForgeContext::accepted_imports(RustClass c) const {
  return accepted_[std::size_t(class_id(c))];
}

const std::vector<TextureAttempt>& ForgeContext::import_log(RustClass c) const {
  return import_log_[std::size_t(class_id(c))];
}

const std::vector<ImportFailure>& ForgeContext::import_failures(RustClass c) const {
  return import_failures_[std::size_t(class_id(c))];
}

SceneSample sample_scene(const ForgeContext& context, RustClass cls, std::uint64_t index) {
  const ForgeConfig& c = context.config();
  SplitMix64 rng = derive_rng(c.seed, scene_tag(cls), index);

  SceneSample s;
  s.distance = rng.uniform(c.camera_distance.min, c.camera_distance.max);
  s.azimuth_deg = rng.uniform(c.camera_azimuth.min, c.camera_azimuth.max);
  s.elevation_deg = rng.uniform(c.camera_elevation.min, c.camera_elevation.max);
  s.light_yaw_deg = rng.uniform(c.light_yaw.min, c.light_yaw.max);
  s.light_pitch_deg = rng.uniform(c.light_pitch.min, c.light_pitch.max);
  const double intensity = rng.uniform(c.light_intensity.min, c.light_intensity.max);
  const double ambient = rng.uniform(c.ambient.min, c.ambient.max);
  const std::uint64_t texture_seed = rng.next();

  const Vec3 center = context.model_bounds().center();
  const double az = s.azimuth_deg * kDeg, el = s.elevation_deg * kDeg;
  s.camera.position = center + Vec3{std::cos(el) * std::sin(az), std::sin(el), std::cos(el) * std::cos(az)} * s.distance;
  s.camera.look_at = center;
  s.camera.up = {0.0, 1.0, 0.0};
  s.camera.vfov_deg = c.camera_fov_deg;
  s.camera.near = std::min(0.05, 0.5 * s.distance);
  s.camera.far = 10.0 * s.distance + 100.0;

  const double ly = s.light_yaw_deg * kDeg, lp = s.light_pitch_deg * kDeg;
  s.light.direction = -Vec3{std::cos(lp) * std::sin(ly), std::sin(lp), std::cos(lp) * std::cos(ly)};
  s.light.intensity = intensity;
  s.light.ambient = ambient;

  s.texture.mode = c.texture_mode;
  s.texture.seed = texture_seed;
  if (c.texture_mode == TextureMode::Import) {
    const auto& accepted = context.accepted_imports(cls);
    const bool base_fallback =
        cls == RustClass::Default && context.import_log(cls).empty() && context.import_failures(cls).empty();
    if (accepted.empty() && !base_fallback) {
      throw ConfigError("no accepted imported textures for class '" + std::string(class_name(cls)) + "'");
    }
    s.texture.import_index = accepted.empty() ? 0 : std::size_t(index % accepted.size());
  }

  s.object.mesh = context.mesh();
  s.object.transform = Transform::identity();
  s.object.cls = cls;
  s.object.id = kObjectId;
  return s;
}

Split assign_split(const ForgeConfig& config, RustClass cls, std::uint64_t index) {
  SplitMix64 rng = derive_rng(config.seed, split_tag(cls), index);
  return rng.uniform01() < config.train_fraction ? Split::Train : Split::Val;
}

TexturedSlot build_slot_texture(const ForgeContext& context, RustClass cls, std::uint64_t index,
                                const TextureSelection& selection) {
  const ForgeConfig& c = context.config();
  const TextureImage& base = context.base_texture();
  TexturedSlot slot{base, base, {}};

  if (selection.mode == TextureMode::Procedural) {
    const RustParams params = RustParams::defaults_for(cls);
    bool accepted = false;
    for (int attempt = 0; attempt < kMaxTextureAttempts && !accepted; ++attempt) {
      const std::uint64_t seed =
          attempt == 0 ? selection.seed : derive_rng(selection.seed, "texture-retry", std::uint64_t(attempt)).next();
      TextureImage tex = generate_rust_texture(base, cls, seed, params);
      Verdict v = accept_texture(tex, cls, c.quality);
      accepted = v.accepted;
      slot.attempts.push_back({seed, "procedural", std::move(v)});
      if (accepted) slot.rust_texture = std::move(tex);
    }
    if (!accepted) {
      throw GenerationError(std::to_string(kMaxTextureAttempts) + " consecutive texture rejections for class '" +
                            std::string(class_name(cls)) + "' index " + std::to_string(index));
    }
  } else {
    const auto& accepted = context.accepted_imports(cls);
    if (accepted.empty()) {
      Verdict v = accept_texture(base, cls, c.quality);
      if (!v.accepted) {
        throw GenerationError("base texture rejected for class '" + std::string(class_name(cls)) + "' index " +
                              std::to_string(index));
      }
      slot.attempts.push_back({0, "base", std::move(v)});
    } else {
      const ImportedTexture& t = accepted.at(selection.import_index);
      slot.rust_texture = t.image;
      slot.attempts.push_back({0, t.provenance.file_name, accept_texture(t.image, cls, c.quality)});
    }
  }
  slot.object_texture = stylize(base, slot.rust_texture, c.stylize);
  return slot;
}

RenderedSlot render_slot(const ForgeContext& context, RustClass cls, std::uint64_t index) {
  SceneSample scene = sample_scene(context, cls, index);
  TexturedSlot tex = build_slot_texture(context, cls, index, scene.texture);
  scene.object.texture = std::make_shared<const TextureImage>(tex.object_texture);
  const ForgeConfig& c = context.config();
  Frame frame = render(std::span<const SceneObject>(&scene.object, 1), scene.camera, scene.light, c.resolution,
                       c.background);
  return {std::move(scene), std::move(tex), std::move(frame)};
}

namespace {

void ensure_dir(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw IoError("cannot create directory '" + p.string() + "': " + ec.message());
}

ManifestEntry produce_slot(const ForgeContext& context, RustClass cls, std::uint64_t index) {
  const ForgeConfig& c = context.config();
  RenderedSlot slot = render_slot(context, cls, index);

  ManifestEntry e;
  e.class_id = class_id(cls);
  e.class_name = std::string(class_name(cls));
  e.index = index;
  e.split = std::string(split_name(assign_split(c, cls, index)));
  const std::string stem = slot_stem(cls, index);
  e.image_path = "images/" + e.split + "/" + stem + ".png";
  e.label_path = "labels/" + e.split + "/" + stem + ".txt";
  e.visible_pixels = visible_pixel_count(slot.frame, kObjectId);
  e.bbox = bbox_from_idmap(slot.frame, kObjectId);
  e.annotations = annotate_frame(slot.frame, std::span<const SceneObject>(&slot.scene.object, 1), c.min_visible_pixels);
  e.texture_attempts = std::move(slot.texture.attempts);

  write_png(c.output_directory / e.image_path, slot.frame.color);
  write_label_file(e.annotations, c.output_directory / e.label_path);

  slot.scene.object.texture.reset();
  e.scene = std::move(slot.scene);
  return e;
}

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json verdict_json(const Verdict& v) {
  json reasons = json::array();
  for (RejectReason r : v.reasons) reasons.push_back(std::string(reason_name(r)));
  return {{"accepted", v.accepted}, {"coverage", v.coverage}, {"clutter", v.clutter}, {"reasons", reasons}};
}

}  // namespace

Manifest generate_dataset(const ForgeConfig& config, const ProgressFn& progress) {
  const ForgeContext context(config);
  const ForgeConfig& c = context.config();
  auto say = [&](const std::string& msg) {
    if (progress) progress(msg);
  };

  for (const char* kind : {"images", "labels"}) {
    for (Split s : {Split::Train, Split::Val}) ensure_dir(c.output_directory / kind / split_name(s));
  }

  struct Slot {
    RustClass cls;
    std::uint64_t index;
  };
  std::vector<Slot> slots;
  for (RustClass cls : kAllRustClasses) {
    for (int i = 0; i < c.images_per_class; ++i) slots.push_back({cls, std::uint64_t(i)});
  }
  say("generating " + std::to_string(slots.size()) + " images into " + c.output_directory.string());

  std::vector<std::optional<ManifestEntry>> results(slots.size());
  std::vector<std::exception_ptr> errors(slots.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < slots.size(); i = next++) {
      try {
        results[i] = produce_slot(context, slots[i].cls, slots[i].index);
        std::lock_guard lock(progress_mutex);
        say(results[i]->image_path);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(c.threads, int(slots.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  Manifest manifest;
  manifest.entries.reserve(slots.size());
  for (auto& r : results) manifest.entries.push_back(std::move(*r));

  write_classes_file(c.output_directory / "classes.txt");
  const fs::path manifest_path = c.output_directory / "manifest.json";
  std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + manifest_path.string() + "' for writing");
  out << manifest_to_json(manifest) << '\n';
  if (!out) throw IoError("error writing '" + manifest_path.string() + "'");
  say("wrote " + manifest_path.string());
  return manifest;
}

std::string manifest_to_json(const Manifest& manifest) {
  json entries = json::array();
  for (const ManifestEntry& e : manifest.entries) {
    const SceneSample& s = e.scene;
    json attempts = json::array();
    for (const TextureAttempt& a : e.texture_attempts) {
      attempts.push_back({{"seed", a.seed}, {"source", a.source}, {"verdict", verdict_json(a.verdict)}});
    }
    json texture = {{"mode", s.texture.mode == TextureMode::Import ? "import" : "procedural"},
                    {"seed", s.texture.seed},
                    {"attempts", attempts}};
    if (s.texture.mode == TextureMode::Import) texture["import_index"] = s.texture.import_index;

    json annotations = json::array();
    for (const YoloAnnotation& a : e.annotations) annotations.push_back({a.class_id, a.cx, a.cy, a.w, a.h});

    json bbox = nullptr;
    if (e.bbox) bbox = {e.bbox->x_min, e.bbox->y_min, e.bbox->x_max, e.bbox->y_max};

    entries.push_back({
        {"image", e.image_path},
        {"label", e.label_path},
        {"split", e.split},
        {"class_id", e.class_id},
        {"class_name", e.class_name},
        {"index", e.index},
        {"scene",
         {{"camera",
           {{"position", vec_json(s.camera.position)},
            {"look_at", vec_json(s.camera.look_at)},
            {"up", vec_json(s.camera.up)},
            {"vfov_deg", s.camera.vfov_deg},
            {"near", s.camera.near},
            {"far", s.camera.far}}},
          {"light",
           {{"direction", vec_json(s.light.direction)},
            {"intensity", s.light.intensity},
            {"ambient", s.light.ambient}}},
          {"distance", s.distance},
          {"azimuth_deg", s.azimuth_deg},
          {"elevation_deg", s.elevation_deg},
          {"light_yaw_deg", s.light_yaw_deg},
          {"light_pitch_deg", s.light_pitch_deg},
          {"texture", texture}}},
        {"bbox", bbox},
        {"visible_pixels", e.visible_pixels},
        {"annotations", annotations},
    });
  }
  return entries.dump(2);
}

}  // namespace rustforge
