#pragma once

// Dynamic rays g_s(t): asymptotic seeding at high potential followed by
// pullback along inverse branches selected by the address.

#include <cstddef>
#include <vector>

#include "cosrays/cosine_map.hpp"
#include "cosrays/symbolic.hpp"

namespace cosrays {

struct TraceConfig {
  double T_cap = 500.0;
  double tol = 1e-9;
  std::size_t max_depth = 60;
  double land_tol = 1e-10;
  // Below this seed potential the asymptotic formula is not trusted.
  double T_min = 10.0;

  void validate() const;
};

struct TracedPoint {
  cplx z;
  std::size_t depth = 0;
  double residual = 0.0;
};

struct RaySample {
  double t = 0.0;
  cplx z;
  double residual = 0.0;
};

struct RayPath {
  ExternalAddress address;
  std::vector<RaySample> samples;  // strictly decreasing t
  TraceConfig config_used;
};

struct LandingResult {
  cplx z;
  bool converged = false;
  double gap = 0.0;
  std::size_t depth = 0;
};

// Im of the horizontal line g_s approaches, from s_1 and the side of s_2.
double strip_center_im(const MapParams& p, double index, Side side, Side next_side);
// Inverse of strip_center_im: the index whose strip center is nearest `im`.
std::int64_t strip_index(const MapParams& p, double im, Side side, Side next_side);

// T - alpha + 2 pi i s_1 (side R) or -T + beta + 2 pi i s_1 (side L), with the
// strip shifted by -pi when s_2 lies on the left.
cplx asymptotic_point(const MapParams& p, const ExternalAddress& s, double T);

TracedPoint trace_point(const MapParams& p, const ExternalAddress& s, double t, const TraceConfig& cfg = {});

RayPath trace_ray(const MapParams& p, const ExternalAddress& s, double t_min, double t_max, std::size_t n_samples,
                  const TraceConfig& cfg = {}, double max_step = 0.25);

// |E(g_s(t)) - g_{sigma s}(F(t))| from two independent traces.
double verify_functional_equation(const MapParams& p, const ExternalAddress& s, double t, const TraceConfig& cfg = {});

// Distance between the raw asymptotic point at t and the one-step pullback of
// the raw asymptotic point of sigma(s) at F(t).
double seed_defect(const MapParams& p, const ExternalAddress& s, double t);

LandingResult landing_point(const MapParams& p, const ExternalAddress& s, const TraceConfig& cfg = {});

}  // namespace cosrays
