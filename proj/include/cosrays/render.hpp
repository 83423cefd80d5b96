#pragma once

// Escape-time images with ray, partition and postsingular overlays, written as
// binary PPM.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cosrays/cosine_map.hpp"
#include "cosrays/escape.hpp"
#include "cosrays/partition.hpp"
#include "cosrays/symbolic.hpp"

namespace cosrays {

enum class OverlayKind { Ray, Partition, Postsingular };

struct Overlay {
  OverlayKind kind = OverlayKind::Partition;
  std::optional<ExternalAddress> address;  // Ray only
};

struct RenderJob {
  MapParams params = sinh_family_params(1);
  Window window{{-5.0, -5.0}, {5.0, 5.0}};
  std::size_t width = 512;
  std::size_t height = 512;
  std::size_t budget = 50;
  std::vector<Overlay> overlays;
  std::string palette = "default";
  PartitionConfig partition;  // used by the partition overlay

  // Throws InvalidArgument unless 16 <= width, height <= 16384, the window is
  // non-degenerate and the palette is known.
  void validate() const;
};

struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, top row first

  void set(std::ptrdiff_t col, std::ptrdiff_t row, std::array<std::uint8_t, 3> c);
};

// Palette index for an escape result; 0 for orbits that did not escape.
std::uint8_t palette_index(const EscapeResult& r);

Image render_escape(const RenderJob& job);

void write_ppm(const Image& img, std::ostream& out);
void write_ppm(const Image& img, const std::string& path);

}  // namespace cosrays
