#include <cmath>
#include <sstream>

#include "doctest.h"

#include "cosrays/errors.hpp"
#include "cosrays/palette.hpp"
#include "cosrays/render.hpp"

using namespace cosrays;

namespace {

std::string encode(const Image& img) {
  std::ostringstream out;
  write_ppm(img, out);
  return out.str();
}

bool palette_colour(const std::uint8_t* px) {
  for (const auto& c : kEscapePalette) {
    if (px[0] == c[0] && px[1] == c[1] && px[2] == c[2]) return true;
    if (px[0] == c[2] && px[1] == c[1] && px[2] == c[0]) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("render") {

TEST_CASE("ppm format") {
  Image img;
  img.width = 2;
  img.height = 1;
  img.rgb = {1, 2, 3, 4, 5, 6};
  CHECK(encode(img) == std::string("P6\n2 1\n255\n\x01\x02\x03\x04\x05\x06", 17));
}

TEST_CASE("palette") {
  CHECK(kEscapePalette[0] == std::array<std::uint8_t, 3>{0, 0, 0});
  for (std::size_t i = 1; i < kEscapePalette.size(); ++i) CHECK(kEscapePalette[i] != kEscapePalette[0]);
  CHECK(palette_index({false, 10, 1}) == 0);
  CHECK(palette_index({true, 0, 1}) == 255);
  CHECK(palette_index({true, 1000, 1}) == 1);
}

TEST_CASE("minimal job") {
  RenderJob job;
  job.width = job.height = 16;
  job.budget = 1;
  const Image img = render_escape(job);
  REQUIRE(img.rgb.size() == 16 * 16 * 3);
  for (std::size_t i = 0; i < img.rgb.size(); i += 3) CHECK(palette_colour(&img.rgb[i]));

  job.width = 8;
  CHECK_THROWS_AS(render_escape(job), Error);
  job.width = 16;
  job.palette = "rainbow";
  CHECK_THROWS_AS(render_escape(job), Error);
}

TEST_CASE("left and right escapes use different hue families") {
  RenderJob job;
  job.window = {{-8.0, -0.5}, {8.0, 0.5}};
  job.width = 64;
  job.height = 16;
  const Image img = render_escape(job);
  const std::size_t row = 8;
  const std::uint8_t* right = &img.rgb[3 * (row * 64 + 63)];
  const std::uint8_t* left = &img.rgb[3 * (row * 64 + 0)];
  CHECK(right[0] >= right[2]);
  CHECK(left[2] >= left[0]);
  CHECK(right[0] == left[2]);
}

TEST_CASE("partition overlay and determinism") {
  RenderJob job;
  job.width = job.height = 256;
  job.overlays = {{OverlayKind::Partition, std::nullopt}, {OverlayKind::Postsingular, std::nullopt},
                  {OverlayKind::Ray, parse_address("(1R)*")}};
  const Image a = render_escape(job);
  const Image b = render_escape(job);
  CHECK(encode(a) == encode(b));

  // The base ray at v = i pi is the horizontal line Im z = pi on the right.
  const double dy = 10.0 / 256.0;
  const auto row = static_cast<std::size_t>(std::floor((5.0 - kPi) / dy));
  int hits = 0;
  for (std::size_t col = 140; col < 256; ++col) {
    const std::uint8_t* px = &a.rgb[3 * (row * 256 + col)];
    if (px[0] == 0 && px[1] == 230 && px[2] == 255) ++hits;
  }
  CHECK(hits > 100);
}

}  // TEST_SUITE
