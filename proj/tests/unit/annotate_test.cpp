#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "rustforge/annotate.hpp"
#include "rustforge/errors.hpp"
#include "support/test_util.hpp"

using namespace rustforge;

namespace {

Frame blank(int w, int h) {
  return Frame{TextureImage(w, h), IdMap(w, h), std::vector<double>(std::size_t(w * h), INFINITY)};
}

void paint(Frame& f, ObjectId id, int x0, int y0, int x1, int y1) {
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) f.ids.set(x, y, id);
}

}  // namespace

TEST(BboxFromIdmap, Rectangle) {
  Frame f = blank(32, 16);
  paint(f, 4, 10, 5, 20, 8);
  EXPECT_EQ(bbox_from_idmap(f, 4), (PixelBox{10, 5, 20, 8}));
  EXPECT_EQ(visible_pixel_count(f, 4), 11u * 4u);
}

TEST(BboxFromIdmap, AbsentAndSinglePixel) {
  Frame f = blank(10, 10);
  EXPECT_FALSE(bbox_from_idmap(f, 1).has_value());
  f.ids.set(7, 3, 1);
  EXPECT_EQ(bbox_from_idmap(f, 1), (PixelBox{7, 3, 7, 3}));
  EXPECT_FALSE(bbox_from_idmap(f, 2).has_value());
}

TEST(BboxFromIdmap, TightOnRandomMaps) {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> id(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    Frame f = blank(13, 9);
    std::bernoulli_distribution sparse(0.1);
    for (int y = 0; y < 9; ++y)
      for (int x = 0; x < 13; ++x)
        if (sparse(rng)) f.ids.set(x, y, ObjectId(id(rng)));
    for (ObjectId o = 0; o <= 3; ++o) {
      auto box = bbox_from_idmap(f, o);
      int x0 = 99, y0 = 99, x1 = -1, y1 = -1;
      for (int y = 0; y < 9; ++y)
        for (int x = 0; x < 13; ++x)
          if (f.ids.at(x, y) == o) {
            x0 = std::min(x0, x);
            y0 = std::min(y0, y);
            x1 = std::max(x1, x);
            y1 = std::max(y1, y);
          }
      if (x1 < 0) {
        EXPECT_FALSE(box.has_value());
      } else {
        EXPECT_EQ(box, (PixelBox{x0, y0, x1, y1}));
      }
    }
  }
}

TEST(ToYolo, HandCases) {
  YoloAnnotation a = to_yolo({160, 120, 479, 359}, {640, 480}, 1);
  EXPECT_EQ(a.class_id, 1);
  EXPECT_DOUBLE_EQ(a.cx, 0.5);
  EXPECT_DOUBLE_EQ(a.cy, 0.5);
  EXPECT_DOUBLE_EQ(a.w, 0.5);
  EXPECT_DOUBLE_EQ(a.h, 0.5);
  YoloAnnotation full = to_yolo({0, 0, 639, 479}, {640, 480}, 0);
  EXPECT_EQ(full, (YoloAnnotation{0, 0.5, 0.5, 1.0, 1.0}));
}

TEST(ToYolo, RoundTripAndValidity) {
  std::mt19937_64 rng(62);
  for (int i = 0; i < 100000; ++i) {
    Resolution res{std::uniform_int_distribution<int>(1, 2000)(rng),
                   std::uniform_int_distribution<int>(1, 2000)(rng)};
    std::uniform_int_distribution<int> dx(0, res.width - 1), dy(0, res.height - 1);
    int xa = dx(rng), xb = dx(rng), ya = dy(rng), yb = dy(rng);
    PixelBox b{std::min(xa, xb), std::min(ya, yb), std::max(xa, xb), std::max(ya, yb)};
    YoloAnnotation a = to_yolo(b, res, i % 3);
    ASSERT_TRUE(is_valid(a, 1e-12)) << i;
    ASSERT_EQ(to_pixel(a, res), b) << i;
  }
}

TEST(IsValid, Rules) {
  EXPECT_TRUE(is_valid({2, 0.5, 0.5, 1.0, 1.0}));
  EXPECT_FALSE(is_valid({3, 0.5, 0.5, 0.5, 0.5}));
  EXPECT_FALSE(is_valid({0, 0.5, 0.5, 0.0, 0.5}));
  EXPECT_FALSE(is_valid({0, 0.9, 0.5, 0.4, 0.5}));
}

TEST(LabelFile, Format) {
  std::ostringstream out;
  std::vector<YoloAnnotation> one{{2, 0.5, 0.5, 0.25, 0.125}};
  write_label_file(one, out);
  EXPECT_EQ(out.str(), "2 0.500000 0.500000 0.250000 0.125000\n");

  std::ostringstream empty;
  write_label_file(std::vector<YoloAnnotation>{}, empty);
  EXPECT_EQ(empty.str(), "");

  std::ostringstream two;
  std::vector<YoloAnnotation> pair{{0, 0.1, 0.2, 0.1, 0.2}, {1, 0.7, 0.6, 0.2, 0.3}};
  write_label_file(pair, two);
  EXPECT_EQ(two.str(), "0 0.100000 0.200000 0.100000 0.200000\n1 0.700000 0.600000 0.200000 0.300000\n");
}

TEST(LabelFile, RoundTripToSixDecimals) {
  std::mt19937_64 rng(63);
  std::uniform_real_distribution<double> u(0.01, 0.4);
  std::vector<YoloAnnotation> annos;
  for (int i = 0; i < 200; ++i) {
    double w = u(rng), h = u(rng);
    annos.push_back({i % 3, 0.5 + (u(rng) - 0.2) * 0.5, 0.5 - (u(rng) - 0.2) * 0.5, w, h});
  }
  std::stringstream buf;
  write_label_file(annos, buf);
  std::vector<YoloAnnotation> back = parse_label_file(buf);
  ASSERT_EQ(back.size(), annos.size());
  for (std::size_t i = 0; i < annos.size(); ++i) {
    EXPECT_EQ(back[i].class_id, annos[i].class_id);
    EXPECT_NEAR(back[i].cx, annos[i].cx, 5e-7);
    EXPECT_NEAR(back[i].cy, annos[i].cy, 5e-7);
    EXPECT_NEAR(back[i].w, annos[i].w, 5e-7);
    EXPECT_NEAR(back[i].h, annos[i].h, 5e-7);
  }
}

TEST(LabelFile, ParseErrorsCarryLine) {
  std::istringstream in("0 0.5 0.5 0.1 0.1\n1 0.5 oops 0.1 0.1\n");
  try {
    parse_label_file(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream short_line("0 0.5 0.5 0.1\n");
  EXPECT_THROW(parse_label_file(short_line), ParseError);
}

TEST(LabelFile, FilesOnDisk) {
  testkit::TempDir dir;
  std::vector<YoloAnnotation> annos{{1, 0.25, 0.75, 0.5, 0.5}};
  write_label_file(annos, dir.path() / "a.txt");
  EXPECT_EQ(read_label_file(dir.path() / "a.txt"), annos);
  EXPECT_THROW(write_label_file(annos, dir.path() / "missing" / "a.txt"), IoError);
  EXPECT_THROW(read_label_file(dir.path() / "nope.txt"), IoError);
  write_classes_file(dir.path() / "classes.txt");
  std::ifstream in(dir.path() / "classes.txt");
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(text, "default\nrust streaks\ncomplete rust\n");
}

TEST(AnnotateFrame, MinimumVisiblePixels) {
  Frame f = blank(40, 40);
  paint(f, 1, 0, 0, 2, 2);   // 9 pixels
  paint(f, 2, 10, 10, 11, 12);  // 6 pixels
  std::vector<SceneObject> scene(3);
  scene[0].id = 1;
  scene[0].cls = RustClass::CompleteRust;
  scene[1].id = 2;
  scene[2].id = 3;
  auto annos = annotate_frame(f, scene, 9);
  ASSERT_EQ(annos.size(), 1u);
  EXPECT_EQ(annos[0].class_id, 2);
  EXPECT_EQ(to_pixel(annos[0], {40, 40}), (PixelBox{0, 0, 2, 2}));
  EXPECT_EQ(annotate_frame(f, scene, 1).size(), 2u);
}
