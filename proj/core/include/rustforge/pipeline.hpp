#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rustforge/annotate.hpp"
#include "rustforge/config.hpp"
#include "rustforge/quality.hpp"
#include "rustforge/render.hpp"

namespace rustforge {

/// One draw from the texture filter, successful or not.
struct TextureAttempt {
  std::uint64_t seed = 0;
  std::string source;
  Verdict verdict;
};

struct TextureSelection {
  TextureMode mode = TextureMode::Procedural;
  /// Seed drawn from the scene stream; attempts derive from it.
  std::uint64_t seed = 0;
  /// Import mode: index into the accepted textures of the class.
  std::size_t import_index = 0;
};

struct SceneSample {
  Camera camera;
  DirectionalLight light;
  TextureSelection texture;
  SceneObject object;

  double distance = 0.0;
  double azimuth_deg = 0.0;
  double elevation_deg = 0.0;
  double light_yaw_deg = 0.0;
  double light_pitch_deg = 0.0;
};

enum class Split { Train, Val };
std::string_view split_name(Split s);

struct ManifestEntry {
  std::string image_path;
  std::string label_path;
  std::string split;
  int class_id = 0;
  std::string class_name;
  std::uint64_t index = 0;
  SceneSample scene;
  std::vector<TextureAttempt> texture_attempts;
  std::optional<PixelBox> bbox;
  std::size_t visible_pixels = 0;
  std::vector<YoloAnnotation> annotations;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
};

/// Loaded, validated inputs shared by every slot of one run.
class ForgeContext {
public:
  /// Loads the model and base texture and, in import mode, imports and
  /// filters the per-class textures. Throws ConfigError / IoError.
  explicit ForgeContext(ForgeConfig config);

  const ForgeConfig& config() const noexcept { return config_; }
  const std::shared_ptr<const Mesh>& mesh() const noexcept { return mesh_; }
  const TextureImage& base_texture() const noexcept { return *base_; }
  const Aabb& model_bounds() const noexcept { return bounds_; }

  /// Accepted imported textures for a class (import mode only).
  const std::vector<ImportedTexture>& accepted_imports(RustClass c) const;
  /// Every import verdict, in file order (import mode only).
  const std::vector<TextureAttempt>& import_log(RustClass c) const;
  /// Import files that could not be decoded.
  const std::vector<ImportFailure>& import_failures(RustClass c) const;

private:
  ForgeConfig config_;
  std::shared_ptr<const Mesh> mesh_;
  std::shared_ptr<const TextureImage> base_;
  Aabb bounds_;
  std::array<std::vector<ImportedTexture>, 3> accepted_;
  std::array<std::vector<TextureAttempt>, 3> import_log_;
  std::array<std::vector<ImportFailure>, 3> import_failures_;
};

/// Draw order from the (seed, "scene/<class>", index) stream: camera
/// distance, azimuth, elevation, light yaw, light pitch, intensity,
/// ambient, texture seed. The returned object has no texture attached.
SceneSample sample_scene(const ForgeContext& context, RustClass cls, std::uint64_t index);

/// Split assignment drawn from the (seed, "split/<class>", index) stream.
Split assign_split(const ForgeConfig& config, RustClass cls, std::uint64_t index);

inline constexpr int kMaxTextureAttempts = 16;

struct TexturedSlot {
  TextureImage rust_texture;
  TextureImage object_texture;
  std::vector<TextureAttempt> attempts;
};

/// Generates (or picks) the rust texture for a slot, runs it through the
/// quality gate and stylizes it onto the base texture. Throws
/// GenerationError after kMaxTextureAttempts consecutive rejections.
TexturedSlot build_slot_texture(const ForgeContext& context, RustClass cls, std::uint64_t index,
                                const TextureSelection& selection);

struct RenderedSlot {
  SceneSample scene;
  TexturedSlot texture;
  Frame frame;
};

/// Full scene for a slot, rendered but not written.
RenderedSlot render_slot(const ForgeContext& context, RustClass cls, std::uint64_t index);

using ProgressFn = std::function<void(std::string_view)>;

/// Writes images/, labels/, classes.txt and manifest.json under the
/// output directory and returns the manifest.
Manifest generate_dataset(const ForgeConfig& config, const ProgressFn& progress = {});

std::string manifest_to_json(const Manifest& manifest);

}  // namespace rustforge
