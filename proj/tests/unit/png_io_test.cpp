#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "rustforge/errors.hpp"
#include "rustforge/png_io.hpp"
#include "support/test_util.hpp"

using namespace rustforge;

namespace {

// 1x1, 16 bits per channel, RGB.
const std::vector<std::uint8_t> kRgb16 = {
    0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52,
    0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x10, 0x02, 0x00, 0x00, 0x00, 0xc0, 0xe7, 0x8f,
    0x9d, 0x00, 0x00, 0x00, 0x0c, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0x10, 0x32, 0x01, 0x41,
    0x00, 0x02, 0xb3, 0x00, 0xd3, 0xfa, 0xb7, 0x02, 0x45, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e,
    0x44, 0xae, 0x42, 0x60, 0x82};

// 2x1 RGBA: (10,20,30,0) and (200,100,50,255).
const std::vector<std::uint8_t> kRgba8 = {
    0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52,
    0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x01, 0x08, 0x06, 0x00, 0x00, 0x00, 0xf4, 0x22, 0x7f,
    0x8a, 0x00, 0x00, 0x00, 0x11, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0xe0, 0x12, 0x91, 0x63,
    0x38, 0x91, 0x62, 0xf4, 0x1f, 0x00, 0x07, 0x48, 0x02, 0x9a, 0xcf, 0x15, 0x5c, 0xfc, 0x00, 0x00,
    0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};

}  // namespace

TEST(Png, RoundTripRandomImages) {
  std::mt19937_64 rng(21);
  testkit::TempDir dir;
  for (auto [w, h] : {std::pair{1, 1}, {3, 7}, {64, 33}, {256, 256}}) {
    TextureImage img = testkit::random_image(rng, w, h);
    EXPECT_EQ(decode_png(encode_png(img)), img);
    auto path = dir.path() / "img.png";
    write_png(path, img);
    EXPECT_EQ(read_png(path), img);
  }
}

TEST(Png, OnePixel) {
  TextureImage img(1, 1, Rgb8{1, 2, 3});
  EXPECT_EQ(decode_png(encode_png(img)), img);
}

TEST(Png, EncodedHeaderIsEightBitRgb) {
  std::vector<std::uint8_t> bytes = encode_png(TextureImage(5, 4));
  ASSERT_GT(bytes.size(), 29u);
  EXPECT_EQ(bytes[24], 8);   // bit depth
  EXPECT_EQ(bytes[25], 2);   // color type RGB
  EXPECT_EQ(bytes[28], 0);   // interlace
}

TEST(Png, SixteenBitIsFormatError) {
  EXPECT_THROW(decode_png(kRgb16), FormatError);
  testkit::TempDir dir;
  auto path = dir.path() / "deep.png";
  std::ofstream(path, std::ios::binary).write(reinterpret_cast<const char*>(kRgb16.data()),
                                              std::streamsize(kRgb16.size()));
  EXPECT_THROW(read_png(path), FormatError);
}

TEST(Png, AlphaIsDropped) {
  TextureImage img = decode_png(kRgba8);
  ASSERT_EQ(img.width(), 2);
  EXPECT_EQ(img.at(0, 0), (Rgb8{10, 20, 30}));
  EXPECT_EQ(img.at(1, 0), (Rgb8{200, 100, 50}));
}

TEST(Png, GarbageIsFormatError) {
  std::vector<std::uint8_t> junk(100, 0x42);
  EXPECT_THROW(decode_png(junk), FormatError);
}

TEST(Png, IoFailures) {
  EXPECT_THROW(read_png("/nonexistent/x.png"), IoError);
  EXPECT_THROW(write_png("/nonexistent/dir/x.png", TextureImage(1, 1)), IoError);
}
