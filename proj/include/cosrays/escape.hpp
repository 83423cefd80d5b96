#pragma once

// Escape-time kernel shared by the classifier, the dimension experiments and
// the renderer.

#include <cstddef>
#include <vector>

#include "cosrays/cosine_map.hpp"

namespace cosrays {

inline constexpr double kEscapeRadius = 50.0;

// Axis-parallel rectangle with corners lo (bottom left) and hi (top right).
struct Window {
  cplx lo{-1.0, -1.0};
  cplx hi{1.0, 1.0};

  double width() const { return hi.real() - lo.real(); }
  double height() const { return hi.imag() - lo.imag(); }
  bool valid() const { return width() > 0.0 && height() > 0.0; }
  bool contains(cplx z) const {
    return z.real() >= lo.real() && z.real() <= hi.real() && z.imag() >= lo.imag() && z.imag() <= hi.imag();
  }
};

struct EscapeResult {
  bool escaped = false;
  std::size_t steps = 0;  // evaluations performed
  int re_sign = 0;        // sign of Re at the last orbit point
};

// Iterates at most `budget` times. An orbit escapes once |Re z| > 50 after
// three successive steps that each quadrupled |Re|. Past |Re| = 700 the next
// step is predicted in log scale instead of evaluated.
EscapeResult escape_time(const MapParams& p, cplx z, std::size_t budget);

// Same, recording the orbit (including the last point reached).
EscapeResult escape_orbit(const MapParams& p, cplx z, std::size_t budget, std::vector<cplx>& orbit);

}  // namespace cosrays
