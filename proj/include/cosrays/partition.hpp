#pragma once

// Itinerary partition: the plane cut along the preimages of one ray landing at
// each critical value. Components carry labels in Z/2, increasing with height,
// and are permuted by translation with 2 pi i.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cosrays/cosine_map.hpp"
#include "cosrays/ray_tracer.hpp"
#include "cosrays/symbolic.hpp"

namespace cosrays {

enum class RayPolicy { Right, Left };

// One preimage curve of a base ray. It starts at a critical point and runs
// off to Re = +inf (side R) or -inf (side L). Samples are sorted by x.
struct BoundaryCurve {
  std::size_t critical_index = 0;  // 0: c0, 1: c0 + i pi
  Side side = Side::R;
  cplx critical_point;
  std::vector<double> x;
  std::vector<double> y;
  double tail_im = 0.0;
  // Labels of the components directly below and above the curve.
  HalfInteger below;
  HalfInteger above;

  double height_at(double re) const;
};

struct PartitionConfig {
  RayPolicy policy = RayPolicy::Right;
  // Explicit base rays for v and v'; required outside the kpi sinh family.
  std::optional<ExternalAddress> base_v;
  std::optional<ExternalAddress> base_vprime;
  // Gets label 0; defaults to a periodic postsingular point.
  std::optional<cplx> reference_point;
  double half_width = 30.0;
  double max_segment = 0.05;
  TraceConfig trace;
};

struct PartitionModel {
  MapParams params;
  RayPolicy policy = RayPolicy::Right;
  ExternalAddress base_v = ExternalAddress::constant(sym_r(0));
  ExternalAddress base_vprime = ExternalAddress::constant(sym_r(0));
  cplx c0;
  // Label of the component containing the segment (c0 - i pi, c0).
  HalfInteger label_origin;
  std::vector<BoundaryCurve> curves;  // (c0,R), (c1,R), (c0,L), (c1,L)
  double height_bound = 0.0;
  double half_width = 30.0;

  const BoundaryCurve& curve(std::size_t critical_index, Side side) const;
};

// Rays at v and v' along the horizontal lines through them; kpi sinh only.
std::pair<ExternalAddress, ExternalAddress> default_base_addresses(const MapParams& p, RayPolicy policy);
// Address of the real half-line on the given side, for maps preserving the real axis.
ExternalAddress real_axis_address(const MapParams& p, Side side);

PartitionModel build_partition(const MapParams& p, const PartitionConfig& cfg = {});

struct Location {
  HalfInteger label;
  double boundary_distance = 0.0;
};

// Label plus vertical distance to the nearest boundary curve; never throws for
// finite z.
Location locate(const PartitionModel& part, cplx z);

HalfInteger itinerary_entry(const PartitionModel& part, cplx z);

Itinerary itinerary_of_point(const PartitionModel& part, cplx z, std::size_t length);

// True if some shift of s (including s itself) is a base address.
bool is_boundary_address(const PartitionModel& part, const ExternalAddress& s, std::size_t horizon);

Itinerary itinerary_of_address(const PartitionModel& part, const ExternalAddress& s, std::size_t length,
                               const TraceConfig& cfg = {});

}  // namespace cosrays
