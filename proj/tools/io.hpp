#pragma once

// JSON and CSV forms of the library types. Every JSON document carries
// "version": kSchemaVersion.

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "cosrays/classifier.hpp"
#include "cosrays/cosine_map.hpp"
#include "cosrays/dimension.hpp"
#include "cosrays/partition.hpp"
#include "cosrays/ray_tracer.hpp"

namespace cosrays::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

json params_to_json(const MapParams& p);
// {"a": [re, im], "b": [re, im]}; ParseError on anything else.
MapParams params_from_json(const json& j);

json to_json(const Classification& c);
json to_json(const BoxCountReport& r);
json to_json(const EscapeStats& s);
json to_json(const LandingResult& r);
json to_json(const Itinerary& it);
json window_to_json(const Window& w);

// Base addresses as literals, curve polylines with tail constants and labels,
// height bound. Doubles round-trip exactly, so a loaded model makes the same
// itinerary_entry decisions as the exported one.
json to_json(const PartitionModel& part);
PartitionModel partition_from_json(const json& j);

// Header "t,re,im,residual", one row per sample, 17 significant digits.
void write_ray_csv(const RayPath& path, std::ostream& out);

// Reads a config file and checks its version field. ParseError on malformed
// JSON, a missing or unsupported version, or a non-object document.
json load_config(const std::string& path);

}  // namespace cosrays::io
