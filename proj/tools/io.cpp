#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "cosrays/errors.hpp"

namespace cosrays::io {

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::ParseError, "expected a complex number as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json params_to_json(const MapParams& p) { return {{"a", complex_to_json(p.a)}, {"b", complex_to_json(p.b)}}; }

MapParams params_from_json(const json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b")) {
    throw Error(ErrorCode::ParseError, "parameters need fields a and b");
  }
  return MapParams::from_coefficients(complex_from_json(j.at("a")), complex_from_json(j.at("b")));
}

namespace {

std::string entry_literal(SymbolEntry e) { return std::to_string(e.index) + (e.side == Side::R ? "R" : "L"); }

}  // namespace

json to_json(const Classification& c) {
  json j{{"version", kSchemaVersion}, {"kind", std::string(to_string(c.kind))}, {"budget_spent", c.budget_spent}};
  switch (c.kind) {
    case ClassKind::OnRay: {
      json prefix = json::array();
      for (auto e : c.prefix) prefix.push_back(entry_literal(e));
      j["prefix"] = prefix;
      j["potential"] = c.potential;
      break;
    }
    case ClassKind::LandingPoint: {
      json cands = json::array();
      for (const auto& s : c.candidates) cands.push_back(to_literal(s));
      j["candidates"] = cands;
      break;
    }
    case ClassKind::PostsingularOrPreimage:
      break;
    case ClassKind::Undecided:
      j["reason"] = c.reason;
      break;
  }
  return j;
}

json window_to_json(const Window& w) {
  return json::array({w.lo.real(), w.lo.imag(), w.hi.real(), w.hi.imag()});
}

json to_json(const BoxCountReport& r) {
  return {{"version", kSchemaVersion}, {"window", window_to_json(r.window)}, {"scales", r.scales},
          {"counts", r.counts},        {"slope", r.slope},                  {"fit_quality", r.fit_quality},
          {"points", r.points}};
}

json to_json(const EscapeStats& s) {
  return {{"version", kSchemaVersion}, {"n_samples", s.n_samples}, {"budget", s.budget},
          {"escape_radius_log", s.escape_radius_log}, {"escaped", s.escaped}, {"fraction", s.fraction}};
}

json to_json(const LandingResult& r) {
  return {{"version", kSchemaVersion}, {"landing", complex_to_json(r.z)}, {"converged", r.converged},
          {"gap", r.gap}, {"depth", r.depth}};
}

json to_json(const Itinerary& it) {
  json entries = json::array();
  for (auto u : it.entries) entries.push_back(to_string(u));
  return {{"version", kSchemaVersion}, {"itinerary", entries}, {"escaped_beyond_range", it.escaped_beyond_range}};
}

json to_json(const PartitionModel& part) {
  json curves = json::array();
  for (const auto& c : part.curves) {
    curves.push_back({{"critical_index", c.critical_index},
                      {"side", c.side == Side::R ? "R" : "L"},
                      {"critical_point", complex_to_json(c.critical_point)},
                      {"x", c.x},
                      {"y", c.y},
                      {"tail_im", c.tail_im},
                      {"below", c.below.value()},
                      {"above", c.above.value()}});
  }
  json j{{"version", kSchemaVersion},
         {"policy", part.policy == RayPolicy::Right ? "right" : "left"},
         {"base_v", to_literal(part.base_v)},
         {"base_vprime", to_literal(part.base_vprime)},
         {"c0", complex_to_json(part.c0)},
         {"label_origin", part.label_origin.value()},
         {"height_bound", part.height_bound},
         {"half_width", part.half_width},
         {"curves", curves}};
  j.update(params_to_json(part.params));
  return j;
}

PartitionModel partition_from_json(const json& j) {
  try {
    if (!j.is_object() || j.value("version", 0) != kSchemaVersion) {
      throw Error(ErrorCode::ParseError, "partition document must declare \"version\": 1");
    }
    PartitionModel part;
    part.params = params_from_json(j);
    const std::string policy = j.at("policy").get<std::string>();
    if (policy != "right" && policy != "left") throw Error(ErrorCode::ParseError, "policy must be right or left");
    part.policy = policy == "right" ? RayPolicy::Right : RayPolicy::Left;
    part.base_v = parse_address(j.at("base_v").get<std::string>());
    part.base_vprime = parse_address(j.at("base_vprime").get<std::string>());
    part.c0 = complex_from_json(j.at("c0"));
    part.label_origin = HalfInteger::from_double(j.at("label_origin").get<double>());
    part.height_bound = j.at("height_bound").get<double>();
    part.half_width = j.at("half_width").get<double>();
    for (const auto& jc : j.at("curves")) {
      BoundaryCurve c;
      c.critical_index = jc.at("critical_index").get<std::size_t>();
      const std::string side = jc.at("side").get<std::string>();
      if (side != "R" && side != "L") throw Error(ErrorCode::ParseError, "curve side must be R or L");
      c.side = side == "R" ? Side::R : Side::L;
      c.critical_point = complex_from_json(jc.at("critical_point"));
      c.x = jc.at("x").get<std::vector<double>>();
      c.y = jc.at("y").get<std::vector<double>>();
      if (c.x.size() != c.y.size() || c.x.empty()) throw Error(ErrorCode::ParseError, "curve polyline is malformed");
      c.tail_im = jc.at("tail_im").get<double>();
      c.below = HalfInteger::from_double(jc.at("below").get<double>());
      c.above = HalfInteger::from_double(jc.at("above").get<double>());
      part.curves.push_back(std::move(c));
    }
    if (part.curves.size() != 4) throw Error(ErrorCode::ParseError, "a partition has four boundary curves");
    return part;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed partition document: ") + e.what());
  }
}

void write_ray_csv(const RayPath& path, std::ostream& out) {
  out << "t,re,im,residual\n";
  char buf[128];
  for (const auto& s : path.samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", s.t, s.z.real(), s.z.imag(), s.residual);
    out << buf;
  }
}

json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot read config " + path);
  json j = json::parse(f, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::ParseError, "config " + path + " is not a JSON object");
  if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != kSchemaVersion) {
    throw Error(ErrorCode::ParseError, "config " + path + " must declare \"version\": 1");
  }
  return j;
}

}  // namespace cosrays::io
