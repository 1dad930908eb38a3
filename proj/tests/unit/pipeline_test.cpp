#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "json.hpp"

#include "rustforge/annotate.hpp"
#include "rustforge/errors.hpp"
#include "rustforge/pipeline.hpp"
#include "rustforge/png_io.hpp"
#include "rustforge/quality.hpp"
#include "support/test_util.hpp"

using namespace rustforge;
namespace fs = std::filesystem;

namespace {

// Small, fast configuration: 64x64 base texture, 96x72 frames.
ForgeConfig small_config(const fs::path& root, int per_class = 2) {
  const fs::path base = root / "base.png";
  if (!fs::exists(base)) write_png(base, make_builtin_base_texture(128, 128));
  ForgeConfig c;
  c.seed = 17;
  c.images_per_class = per_class;
  c.resolution = {96, 72};
  c.base_texture = base.string();
  c.cylinder.segments = 24;
  c.output_directory = root / "out";
  return c;
}

std::size_t count_files(const fs::path& dir, const std::string& ext) {
  std::size_t n = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ext) ++n;
  return n;
}

}  // namespace

TEST(SampleScene, DeterministicPerSlot) {
  testkit::TempDir dir;
  ForgeContext ctx(small_config(dir.path()));
  SceneSample a = sample_scene(ctx, RustClass::RustStreaks, 5);
  SceneSample b = sample_scene(ctx, RustClass::RustStreaks, 5);
  EXPECT_EQ(a.camera.position, b.camera.position);
  EXPECT_EQ(a.light.direction, b.light.direction);
  EXPECT_EQ(a.texture.seed, b.texture.seed);
  SceneSample c = sample_scene(ctx, RustClass::RustStreaks, 6);
  EXPECT_NE(a.camera.position, c.camera.position);
  SceneSample d = sample_scene(ctx, RustClass::CompleteRust, 5);
  EXPECT_NE(a.texture.seed, d.texture.seed);
}

TEST(SampleScene, CameraOnSphereAroundModel) {
  testkit::TempDir dir;
  ForgeContext ctx(small_config(dir.path()));
  for (std::uint64_t i = 0; i < 200; ++i) {
    SceneSample s = sample_scene(ctx, RustClass::Default, i);
    Vec3 center = ctx.model_bounds().center();
    EXPECT_NEAR((s.camera.position - center).length(), s.distance, 1e-9);
    EXPECT_EQ(s.camera.look_at, center);
    EXPECT_GE(s.distance, 5.0);
    EXPECT_LE(s.distance, 8.0);
    EXPECT_NEAR(s.light.direction.length(), 1.0, 1e-12);
    EXPECT_LT(s.light.direction.y, 0.0);  // pitch in [20, 70] points the light downward
    EXPECT_GE(s.light.ambient, 0.2);
    EXPECT_LE(s.light.intensity, 1.0);
    EXPECT_NO_THROW(s.camera.validate());
  }
}

TEST(SampleScene, DegenerateRangesFixEverythingButTextureSeed) {
  testkit::TempDir dir;
  ForgeConfig c = small_config(dir.path());
  c.camera_distance = RangeSpec::fixed(6);
  c.camera_azimuth = RangeSpec::fixed(30);
  c.camera_elevation = RangeSpec::fixed(10);
  c.light_yaw = RangeSpec::fixed(45);
  c.light_pitch = RangeSpec::fixed(45);
  c.light_intensity = RangeSpec::fixed(0.8);
  c.ambient = RangeSpec::fixed(0.3);
  ForgeContext ctx(c);
  SceneSample first = sample_scene(ctx, RustClass::CompleteRust, 0);
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 50; ++i) {
    SceneSample s = sample_scene(ctx, RustClass::CompleteRust, i);
    EXPECT_EQ(s.camera.position, first.camera.position);
    EXPECT_EQ(s.light.direction, first.light.direction);
    EXPECT_EQ(s.light.intensity, 0.8);
    seeds.insert(s.texture.seed);
  }
  EXPECT_EQ(seeds.size(), 50u);
}

TEST(SampleScene, AzimuthBinsAreBalanced) {
  testkit::TempDir dir;
  ForgeConfig c = small_config(dir.path());
  c.camera_azimuth = {0, 360};
  ForgeContext ctx(c);
  std::array<int, 10> bins{};
  for (std::uint64_t i = 0; i < 10000; ++i) {
    double az = sample_scene(ctx, RustClass::Default, i).azimuth_deg;
    ASSERT_GE(az, 0.0);
    ASSERT_LE(az, 360.0);
    bins[std::min<std::size_t>(9, std::size_t(az / 36.0))]++;
  }
  for (int n : bins) {
    EXPECT_GE(n, 800);
    EXPECT_LE(n, 1200);
  }
}

TEST(AssignSplit, FractionsRoughlyHonored) {
  ForgeConfig c;
  int val = 0;
  for (std::uint64_t i = 0; i < 5000; ++i) val += assign_split(c, RustClass::RustStreaks, i) == Split::Val;
  EXPECT_NEAR(val / 5000.0, 0.1, 0.02);
  EXPECT_EQ(assign_split(c, RustClass::Default, 3), assign_split(c, RustClass::Default, 3));
  c.train_fraction = 1.0;
  c.val_fraction = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) EXPECT_EQ(assign_split(c, RustClass::Default, i), Split::Train);
}

TEST(BuildSlotTexture, RecordsAttemptsAndPassesGate) {
  testkit::TempDir dir;
  ForgeContext ctx(small_config(dir.path()));
  for (RustClass cls : kAllRustClasses) {
    SceneSample s = sample_scene(ctx, cls, 0);
    TexturedSlot slot = build_slot_texture(ctx, cls, 0, s.texture);
    ASSERT_FALSE(slot.attempts.empty());
    EXPECT_TRUE(slot.attempts.back().verdict.accepted);
    for (std::size_t i = 0; i + 1 < slot.attempts.size(); ++i) EXPECT_FALSE(slot.attempts[i].verdict.accepted);
    EXPECT_EQ(slot.attempts.front().seed, s.texture.seed);
    EXPECT_EQ(slot.object_texture.width(), 128);
  }
}

TEST(BuildSlotTexture, GivesUpAfterSixteenRejections) {
  testkit::TempDir dir;
  ForgeConfig c = small_config(dir.path());
  c.quality.bands[RustClass::CompleteRust] = {0.99, 1.0};
  ForgeContext ctx(c);
  SceneSample s = sample_scene(ctx, RustClass::CompleteRust, 4);
  try {
    build_slot_texture(ctx, RustClass::CompleteRust, 4, s.texture);
    FAIL();
  } catch (const GenerationError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("complete rust"), std::string::npos);
    EXPECT_NE(msg.find("4"), std::string::npos);
  }
}

TEST(GenerateDataset, OnePerClassLayout) {
  testkit::TempDir dir;
  ForgeConfig c = small_config(dir.path(), 1);
  Manifest m = generate_dataset(c);
  ASSERT_EQ(m.entries.size(), 3u);
  const fs::path out = c.output_directory;
  EXPECT_EQ(count_files(out / "images", ".png"), 3u);
  EXPECT_EQ(count_files(out / "labels", ".txt"), 3u);
  EXPECT_TRUE(fs::is_regular_file(out / "classes.txt"));
  ASSERT_TRUE(fs::is_regular_file(out / "manifest.json"));
  std::ifstream in(out / "manifest.json");
  nlohmann::json doc = nlohmann::json::parse(in);
  ASSERT_TRUE(doc.is_array());
  EXPECT_EQ(doc.size(), 3u);
  EXPECT_TRUE(doc[0]["scene"]["texture"].contains("attempts"));
  EXPECT_EQ(doc[0]["image"].get<std::string>().rfind("images/", 0), 0u);
}

TEST(GenerateDataset, ZeroImagesPerClass) {
  testkit::TempDir dir;
  ForgeConfig c = small_config(dir.path());
  c.images_per_class = 0;
  EXPECT_THROW(generate_dataset(c), ConfigError);
}

TEST(GenerateDataset, IntegrityAndBalance) {
  testkit::TempDir dir;
  ForgeConfig c = small_config(dir.path(), 4);
  Manifest m = generate_dataset(c);
  std::array<int, 3> per_class{};
  for (const ManifestEntry& e : m.entries) {
    per_class[std::size_t(e.class_id)]++;
    const fs::path img = c.output_directory / e.image_path;
    const fs::path lbl = c.output_directory / e.label_path;
    ASSERT_TRUE(fs::is_regular_file(img)) << img;
    ASSERT_TRUE(fs::is_regular_file(lbl)) << lbl;
    EXPECT_EQ(img.stem(), lbl.stem());
    TextureImage png = read_png(img);
    EXPECT_EQ(png.width(), 96);
    auto annos = read_label_file(lbl);
    ASSERT_EQ(annos.size(), e.annotations.size());
    for (std::size_t k = 0; k < annos.size(); ++k) EXPECT_NEAR(annos[k].cx, e.annotations[k].cx, 5e-7);
    for (const auto& a : annos) {
      EXPECT_TRUE(is_valid(a, 1e-9));
      EXPECT_EQ(a.class_id, e.class_id);
    }
    EXPECT_TRUE(e.texture_attempts.back().verdict.accepted);
  }
  EXPECT_EQ(per_class, (std::array<int, 3>{4, 4, 4}));
}

TEST(GenerateDataset, DefaultClassHasNoRust) {
  testkit::TempDir dir;
  ForgeContext ctx(small_config(dir.path()));
  for (std::uint64_t i = 0; i < 3; ++i) {
    RenderedSlot r = render_slot(ctx, RustClass::Default, i);
    EXPECT_LE(rust_coverage(r.texture.object_texture), ctx.config().quality.bands[RustClass::Default].max);
  }
}

TEST(GenerateDataset, ThreadCountDoesNotChangeOutput) {
  testkit::TempDir a, b;
  ForgeConfig ca = small_config(a.path(), 3);
  ForgeConfig cb = small_config(b.path(), 3);
  ca.threads = 1;
  cb.threads = 3;
  generate_dataset(ca);
  generate_dataset(cb);
  auto ha = testkit::hash_tree(ca.output_directory);
  auto hb = testkit::hash_tree(cb.output_directory);
  EXPECT_EQ(ha, hb);
  EXPECT_EQ(ha.size(), 9u * 2 + 2);
}

TEST(GenerateDataset, ProgressIsReported) {
  testkit::TempDir dir;
  std::vector<std::string> lines;
  generate_dataset(small_config(dir.path(), 1), [&](std::string_view s) { lines.emplace_back(s); });
  EXPECT_GE(lines.size(), 3u);
}

TEST(ImportMode, RoundRobinOverAcceptedTextures) {
  testkit::TempDir dir;
  ForgeConfig c = small_config(dir.path());
  const fs::path tex = dir.path() / "tex";
  fs::create_directories(tex / "rust_streaks");
  fs::create_directories(tex / "complete rust");
  const TextureImage base = make_builtin_base_texture(128, 128);
  for (int i = 0; i < 3; ++i) {
    write_png(tex / "rust_streaks" / ("s" + std::to_string(i) + ".png"),
              generate_rust_texture(base, RustClass::RustStreaks, std::uint64_t(i),
                                    RustParams::defaults_for(RustClass::RustStreaks)));
  }
  write_png(tex / "complete rust" / "full.png",
            generate_rust_texture(base, RustClass::CompleteRust, 1, RustParams::defaults_for(RustClass::CompleteRust)));
  // Cluttered: must be filtered out.
  write_png(tex / "complete rust" / "noisy.png", testkit::checkerboard(64, 64));
  c.texture_mode = TextureMode::Import;
  c.import_directory = tex;
  ForgeContext ctx(c);
  EXPECT_EQ(ctx.accepted_imports(RustClass::RustStreaks).size(), 3u);
  EXPECT_EQ(ctx.accepted_imports(RustClass::CompleteRust).size(), 1u);
  EXPECT_EQ(ctx.import_log(RustClass::CompleteRust).size(), 2u);
  for (std::uint64_t i = 0; i < 6; ++i)
    EXPECT_EQ(sample_scene(ctx, RustClass::RustStreaks, i).texture.import_index, i % 3);
  RenderedSlot r = render_slot(ctx, RustClass::CompleteRust, 0);
  EXPECT_EQ(r.texture.attempts.back().source, "full.png");
}

TEST(ImportMode, NoAcceptedTexturesIsConfigError) {
  testkit::TempDir dir;
  ForgeConfig c = small_config(dir.path());
  const fs::path tex = dir.path() / "tex";
  fs::create_directories(tex / "rust_streaks");
  fs::create_directories(tex / "complete_rust");
  write_png(tex / "rust_streaks" / "gray.png", TextureImage(16, 16, Rgb8{128, 128, 128}));
  c.texture_mode = TextureMode::Import;
  c.import_directory = tex;
  ForgeContext ctx(c);
  EXPECT_THROW(sample_scene(ctx, RustClass::RustStreaks, 0), ConfigError);
  EXPECT_THROW(sample_scene(ctx, RustClass::CompleteRust, 0), ConfigError);
  EXPECT_NO_THROW(sample_scene(ctx, RustClass::Default, 0));
}

TEST(ForgeContext, MissingInputs) {
  testkit::TempDir dir;
  ForgeConfig c = small_config(dir.path());
  c.model = (dir.path() / "missing.obj").string();
  EXPECT_THROW(ForgeContext{c}, IoError);
  c = small_config(dir.path());
  c.base_texture = (dir.path() / "missing.png").string();
  EXPECT_THROW(ForgeContext{c}, IoError);
  c = small_config(dir.path());
  c.texture_mode = TextureMode::Import;
  c.import_directory = dir.path() / "nope";
  EXPECT_THROW(ForgeContext{c}, ConfigError);
}
