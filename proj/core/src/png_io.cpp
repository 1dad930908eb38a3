#include "rustforge/png_io.hpp"

#include <png.h>

#include <array>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>

#include "rustforge/errors.hpp"

namespace rustforge {

namespace {

constexpr std::array<std::uint8_t, 8> kSignature{0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

struct ImageGuard {
  png_image* image;
  ~ImageGuard() { png_image_free(image); }
};

std::uint32_t read_be32(const std::uint8_t* p) {
  return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) | (std::uint32_t(p[2]) << 8) |
         std::uint32_t(p[3]);
}

}  // namespace

TextureImage decode_png(std::span<const std::uint8_t> data) {
  // IHDR is always the first chunk: signature(8) len(4) "IHDR"(4) w h depth type ...
  if (data.size() < 33 || !std::equal(kSignature.begin(), kSignature.end(), data.begin()) ||
      std::memcmp(data.data() + 12, "IHDR", 4) != 0) {
    throw FormatError("not a PNG stream");
  }
  const std::uint8_t bit_depth = data[24];
  const std::uint8_t color_type = data[25];
  if (bit_depth != 8) {
    throw FormatError("unsupported PNG bit depth " + std::to_string(bit_depth) + " (need 8)");
  }
  if (color_type != PNG_COLOR_TYPE_RGB && color_type != PNG_COLOR_TYPE_RGB_ALPHA) {
    throw FormatError("unsupported PNG color type " + std::to_string(color_type) + " (need RGB or RGBA)");
  }
  const std::uint32_t width = read_be32(data.data() + 16);
  const std::uint32_t height = read_be32(data.data() + 20);
  if (width == 0 || height == 0 || width > (1u << 15) || height > (1u << 15)) {
    throw FormatError("PNG dimensions out of range");
  }

  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  ImageGuard guard{&image};
  if (!png_image_begin_read_from_memory(&image, data.data(), data.size())) {
    throw FormatError(std::string("PNG decode failed: ") + image.message);
  }
  // Read with alpha and discard it by hand; asking libpng for RGB would composite.
  image.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, rgba.data(), 0, nullptr)) {
    throw FormatError(std::string("PNG decode failed: ") + image.message);
  }
  std::vector<std::uint8_t> pixels(rgba.size() / 4 * 3);
  for (std::size_t i = 0, j = 0; i < rgba.size(); i += 4, j += 3) {
    pixels[j] = rgba[i];
    pixels[j + 1] = rgba[i + 1];
    pixels[j + 2] = rgba[i + 2];
  }
  return TextureImage::from_pixels(int(image.width), int(image.height), std::move(pixels));
}

std::vector<std::uint8_t> encode_png(const TextureImage& img) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = png_uint_32(img.width());
  image.height = png_uint_32(img.height());
  image.format = PNG_FORMAT_RGB;
  ImageGuard guard{&image};

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, img.bytes().data(), 0, nullptr)) {
    throw IoError(std::string("PNG encode failed: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, img.bytes().data(), 0, nullptr)) {
    throw IoError(std::string("PNG encode failed: ") + image.message);
  }
  out.resize(size);
  return out;
}

TextureImage read_png(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  try {
    return decode_png(data);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_png(const std::filesystem::path& path, const TextureImage& img) {
  const auto data = encode_png(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

}  // namespace rustforge
