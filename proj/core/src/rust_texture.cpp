#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "rustforge/errors.hpp"
#include "rustforge/png_io.hpp"
#include "rustforge/rng.hpp"
#include "rustforge/texture.hpp"

namespace rustforge {

std::string_view class_name(RustClass c) {
  switch (c) {
    case RustClass::Default: return "default";
    case RustClass::RustStreaks: return "rust streaks";
    case RustClass::CompleteRust: return "complete rust";
  }
  return "default";
}

std::string_view class_slug(RustClass c) {
  switch (c) {
    case RustClass::Default: return "default";
    case RustClass::RustStreaks: return "rust_streaks";
    case RustClass::CompleteRust: return "complete_rust";
  }
  return "default";
}

std::optional<RustClass> class_from_id(int id) {
  if (id < 0 || id > 2) return std::nullopt;
  return static_cast<RustClass>(id);
}

std::optional<RustClass> class_from_name(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '-', '_');
  std::replace(key.begin(), key.end(), ' ', '_');
  for (RustClass c : kAllRustClasses) {
    if (key == class_slug(c)) return c;
  }
  return std::nullopt;
}

std::vector<RampStop> RustParams::default_ramp() {
  return {{0.0, {}}, {0.45, {120, 60, 30}}, {0.7, {160, 80, 35}}, {1.0, {90, 45, 25}}};
}

RustParams RustParams::defaults_for(RustClass c) {
  RustParams p;
  switch (c) {
    case RustClass::Default: p.coverage_bias = 0.0; break;
    case RustClass::RustStreaks: p.coverage_bias = 0.22; break;
    case RustClass::CompleteRust: p.coverage_bias = 0.85; break;
  }
  return p;
}

void RustParams::validate() const {
  if (octaves < 1) throw ArgumentError("RustParams: octaves must be >= 1");
  if (!(frequency > 0.0)) throw ArgumentError("RustParams: frequency must be > 0");
  if (!(streak_anisotropy >= 1.0)) throw ArgumentError("RustParams: streak anisotropy must be >= 1");
  if (!(coverage_bias >= 0.0 && coverage_bias <= 1.0)) {
    throw ArgumentError("RustParams: coverage bias must lie in [0, 1]");
  }
  if (ramp.size() < 2 || ramp.front().position != 0.0 || ramp.back().position != 1.0) {
    throw ArgumentError("RustParams: ramp must start at 0.0 and end at 1.0");
  }
  for (std::size_t i = 1; i < ramp.size(); ++i) {
    if (!(ramp[i].position > ramp[i - 1].position)) {
      throw ArgumentError("RustParams: ramp positions must be strictly increasing");
    }
  }
}

namespace {

RgbF ramp_color(const std::vector<RampStop>& ramp, double t, Rgb8 base) {
  auto stop_color = [&](std::size_t i) { return i == 0 ? to_float(base) : to_float(ramp[i].color); };
  t = std::clamp(t, 0.0, 1.0);
  for (std::size_t i = 1; i < ramp.size(); ++i) {
    if (t <= ramp[i].position) {
      const double span = ramp[i].position - ramp[i - 1].position;
      const double f = (t - ramp[i - 1].position) / span;
      return stop_color(i - 1) + (stop_color(i) - stop_color(i - 1)) * f;
    }
  }
  return stop_color(ramp.size() - 1);
}

double first_rust_stop(const std::vector<RampStop>& ramp) { return ramp[1].position; }

}  // namespace

TextureImage generate_rust_texture(const TextureImage& base, RustClass cls, std::uint64_t seed,
                                   const RustParams& params) {
  if (cls == RustClass::Default) return base;
  params.validate();

  const int w = base.width();
  const int h = base.height();
  const std::uint64_t noise_seed = splitmix64_mix(seed ^ (std::uint64_t(class_id(cls)) << 56));
  const double stretch = cls == RustClass::RustStreaks ? params.streak_anisotropy : 1.0;
  // Isotropic pixel scale: one noise cell spans w / frequency pixels on both axes.
  const double scale = params.frequency / double(w);

  std::vector<double> field(base.pixel_count());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double nx = (x + 0.5) * scale;
      const double ny = (y + 0.5) * scale / stretch;
      field[std::size_t(y) * std::size_t(w) + std::size_t(x)] =
          fbm(nx, ny, noise_seed, params.octaves, params.lacunarity, params.gain);
    }
  }

  TextureImage out = base;
  const std::size_t n = field.size();
  const auto rust_count = static_cast<std::size_t>(std::llround(params.coverage_bias * double(n)));
  if (rust_count == 0) return out;

  // Threshold at the field quantile so exactly the requested share of
  // pixels (up to ties) turns to rust.
  std::vector<double> sorted = field;
  std::nth_element(sorted.begin(), sorted.begin() + std::ptrdiff_t(n - rust_count), sorted.end());
  const double threshold = sorted[n - rust_count];
  const double peak = *std::max_element(field.begin(), field.end());
  const double lo = first_rust_stop(params.ramp);

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double t = field[std::size_t(y) * std::size_t(w) + std::size_t(x)];
      if (t < threshold) continue;
      const double rel = peak > threshold ? (t - threshold) / (peak - threshold) : 0.0;
      out.set(x, y, quantize(ramp_color(params.ramp, lo + (1.0 - lo) * rel, base.at(x, y))));
    }
  }
  return out;
}

TextureImage make_builtin_base_texture(int width, int height) {
  TextureImage img(width, height);
  constexpr std::uint64_t kSeed = 0x5EED0BA5Eull;
  const double scale = 4.0 / double(width);
  const int seam_rows[] = {height / 3, (2 * height) / 3};
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double n = fbm((x + 0.5) * scale, (y + 0.5) * scale, kSeed, 4, 2.0, 0.5) - 0.5;
      // Faint horizontal brushing.
      const double brush = 3.0 * gradient_noise((x + 0.5) * 0.01, (y + 0.5) * 0.7, kSeed + 1);
      double shade = 28.0 * n + brush;
      for (int seam : seam_rows) {
        if (std::abs(y - seam) <= 1) shade -= 38.0;
      }
      const RgbF c{146.0 + shade, 152.0 + shade, 160.0 + shade};
      img.set(x, y, quantize(c));
    }
  }
  // Rivets along the seams.
  for (int seam : seam_rows) {
    for (int cx = width / 32; cx < width; cx += width / 16) {
      for (int dy = -5; dy <= 5; ++dy) {
        for (int dx = -2; dx <= 2; ++dx) {
          const int yy = seam + dy, xx = cx + dx;
          if (std::abs(dy) < 3 || xx < 0 || xx >= width || yy < 0 || yy >= height) continue;
          if (dx * dx + (std::abs(dy) - 4) * (std::abs(dy) - 4) > 2) continue;
          img.set(xx, yy, {120, 125, 132});
        }
      }
    }
  }
  return img;
}

ImportResult import_textures(const std::filesystem::path& directory, RustClass cls, bool recursive) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) {
    throw IoError("texture directory '" + directory.string() + "' does not exist");
  }

  std::vector<fs::path> files;
  auto consider = [&](const fs::directory_entry& entry) {
    if (!entry.is_regular_file()) return;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (ext == ".png") files.push_back(entry.path());
  };
  try {
    if (recursive) {
      for (const auto& e : fs::recursive_directory_iterator(directory)) consider(e);
    } else {
      for (const auto& e : fs::directory_iterator(directory)) consider(e);
    }
  } catch (const fs::filesystem_error& e) {
    throw IoError(std::string("cannot list texture directory: ") + e.what());
  }

  std::vector<std::pair<std::string, fs::path>> named;
  named.reserve(files.size());
  for (const auto& f : files) named.emplace_back(f.lexically_relative(directory).generic_string(), f);
  std::sort(named.begin(), named.end());

  ImportResult result;
  for (const auto& [name, path] : named) {
    try {
      result.textures.push_back({read_png(path), {name, cls}});
    } catch (const Error& e) {
      result.failures.push_back({name, e.what()});
    }
  }
  return result;
}

}  // namespace rustforge
