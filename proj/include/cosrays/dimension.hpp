#pragma once

// Box-counting and escape statistics.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cosrays/cosine_map.hpp"
#include "cosrays/escape.hpp"
#include "cosrays/ray_tracer.hpp"

namespace cosrays {

struct BoxCountReport {
  Window window;
  std::vector<double> scales;        // box side lengths, strictly decreasing
  std::vector<std::uint64_t> counts;  // occupied boxes per scale
  double slope = 0.0;
  double fit_quality = 0.0;  // R^2 of the fit
  std::size_t points = 0;    // points inside the window
};

// Square boxes of side max(width, height) / 2^j for j = 2 .. n_scales + 1.
// The fit drops the coarsest and finest scale. Needs >= 1000 points inside the
// window (TooFewPoints) and n_scales >= 4.
BoxCountReport box_count(const std::vector<cplx>& points, const Window& window, std::size_t n_scales = 8);

struct RayFamilyReport {
  BoxCountReport box;
  std::size_t rays = 0;
  std::size_t skipped = 0;  // rays whose tracing failed
};

// All periodic addresses with |s_k| <= bound and minimal period <= tail_depth,
// each sampled for potentials in [t_floor, t_max] with t_max chosen so that
// the ray has left the window.
RayFamilyReport ray_family_dimension(const MapParams& p, std::int64_t bound, std::size_t tail_depth, double t_floor,
                                     const Window& window, const TraceConfig& cfg = {}, std::size_t n_scales = 8);

struct EscapeStats {
  std::size_t n_samples = 0;
  std::size_t budget = 0;
  double escape_radius_log = 0.0;
  std::size_t escaped = 0;
  double fraction = 0.0;
};

// Uniform samples from std::mt19937_64(seed); each coordinate is
// (draw >> 11) * 2^-53 scaled into the window, real part first.
std::vector<cplx> sample_window(const Window& window, std::size_t n, std::uint64_t seed);

EscapeStats escape_fraction(const MapParams& p, const Window& window, std::size_t n_samples, std::size_t budget,
                            std::uint64_t seed);
// Same on a given sample set.
EscapeStats escape_fraction(const MapParams& p, const std::vector<cplx>& samples, std::size_t budget);

struct EscapingSetReport {
  BoxCountReport box;
  std::size_t escaped = 0;
  double fraction = 0.0;
};

// Box-counts the escaping pixel centres of a resolution x resolution grid.
EscapingSetReport escaping_set_dimension(const MapParams& p, const Window& window, std::size_t resolution,
                                         std::size_t budget, std::size_t n_scales = 8);

}  // namespace cosrays
