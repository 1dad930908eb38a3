#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "rustforge/image.hpp"

namespace rustforge {

/// Decodes an 8-bit RGB or RGBA PNG (alpha is dropped). Any other bit depth
/// or color type raises FormatError.
TextureImage decode_png(std::span<const std::uint8_t> data);
/// Encodes as 8-bit RGB, non-interlaced.
std::vector<std::uint8_t> encode_png(const TextureImage& img);

TextureImage read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const TextureImage& img);

}  // namespace rustforge
