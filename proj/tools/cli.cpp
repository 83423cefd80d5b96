#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "cosrays/classifier.hpp"
#include "cosrays/dimension.hpp"
#include "cosrays/errors.hpp"
#include "cosrays/partition.hpp"
#include "cosrays/ray_tracer.hpp"
#include "cosrays/render.hpp"
#include "io.hpp"

namespace cosrays {

namespace {

using io::json;

struct Options {
  std::string config;

  // map selection
  std::string family = "sinh";
  int k = 1;
  std::string a, b, params_file, seed;
  bool fixed_value_family = false;

  // rays
  std::string address;
  std::string t_range = "0.5:10:64";
  double max_step = 0.25;
  double t_cap = 500.0;
  double tol = 1e-9;
  std::size_t max_depth = 60;
  double land_tol = 1e-10;
  std::string out;

  // partition / classification
  std::string point;
  std::size_t length = 10;
  std::string policy = "right";
  std::string base_v, base_vprime;
  std::string partition_file, export_partition;
  std::size_t iter = 60;
  std::size_t itin_length = 12;
  std::int64_t search_bound = 3;
  std::size_t depth = 8;

  // experiments
  std::string mode = "rays";
  std::int64_t bound = 1;
  std::size_t tail_depth = 3;
  double t_floor = 1.0;
  std::string window;
  std::size_t resolution = 512;
  std::size_t budget = 0;
  std::size_t scales = 8;
  std::size_t samples = 100000;
  std::uint64_t rng_seed = 1;

  // render
  std::string size = "512x512";
  std::vector<std::string> overlays;
  std::string palette = "default";
};

std::vector<double> split_numbers(const std::string& text, const std::string& what, char sep = ',') {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError(what, "cannot read '" + text + "'");
    }
  }
  return out;
}

cplx parse_complex(const std::string& text, const std::string& what) {
  const auto v = split_numbers(text, what);
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() != 2) throw CLI::ValidationError(what, "expected re,im");
  return {v[0], v[1]};
}

Window parse_window(const std::string& text) {
  const auto v = split_numbers(text, "--window");
  if (v.size() != 4) throw CLI::ValidationError("--window", "expected x0,y0,x1,y1");
  return {{v[0], v[1]}, {v[2], v[3]}};
}

ExternalAddress parse_address_arg(const std::string& text, const std::string& what) {
  if (text.empty()) throw CLI::ValidationError(what, "is required");
  try {
    return parse_address(text);
  } catch (const Error& e) {
    throw CLI::ValidationError(what, e.what());
  }
}

MapParams map_params(const Options& o) {
  if (!o.params_file.empty()) {
    std::ifstream f(o.params_file);
    if (!f) throw Error(ErrorCode::ParseError, "cannot read " + o.params_file);
    const json j = json::parse(f, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::ParseError, o.params_file + " is not JSON");
    return io::params_from_json(j);
  }
  if (o.family == "sinh") return sinh_family_params(o.k);
  if (o.family == "fixed-value") return solve_fixed_value_family(o.k);
  if (o.a.empty() || o.b.empty()) throw CLI::ValidationError("--family custom", "needs --a and --b");
  return MapParams::from_coefficients(parse_complex(o.a, "--a"), parse_complex(o.b, "--b"));
}

TraceConfig trace_config(const Options& o) {
  TraceConfig c;
  c.T_cap = o.t_cap;
  c.tol = o.tol;
  c.max_depth = o.max_depth;
  c.land_tol = o.land_tol;
  return c;
}

PartitionModel partition_for(const Options& o, const MapParams& p) {
  if (!o.partition_file.empty()) {
    std::ifstream f(o.partition_file);
    if (!f) throw Error(ErrorCode::ParseError, "cannot read partition " + o.partition_file);
    const json j = json::parse(f, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::ParseError, o.partition_file + " is not JSON");
    return io::partition_from_json(j);
  }
  PartitionConfig cfg;
  if (o.policy == "left") {
    cfg.policy = RayPolicy::Left;
  } else if (o.policy != "right") {
    throw CLI::ValidationError("--policy", "must be right or left");
  }
  if (!o.base_v.empty()) cfg.base_v = parse_address_arg(o.base_v, "--base-v");
  if (!o.base_vprime.empty()) cfg.base_vprime = parse_address_arg(o.base_vprime, "--base-vprime");
  cfg.trace = trace_config(o);
  PartitionModel part = build_partition(p, cfg);
  if (!o.export_partition.empty()) {
    std::ofstream f(o.export_partition);
    if (!f || !(f << io::to_json(part).dump() << '\n')) {
      throw std::runtime_error("cannot write " + o.export_partition);
    }
  }
  return part;
}

void add_map_options(CLI::App* sub, Options& o) {
  sub->add_option("--family", o.family, "sinh, fixed-value or custom")
      ->check(CLI::IsMember({"sinh", "fixed-value", "custom"}));
  sub->add_option("--k", o.k, "family index");
  sub->add_option("--a", o.a, "coefficient a as re,im (custom family)");
  sub->add_option("--b", o.b, "coefficient b as re,im (custom family)");
  sub->add_option("--params", o.params_file, "parameter JSON file {\"a\": [re, im], \"b\": [re, im]}");
}

void add_trace_options(CLI::App* sub, Options& o) {
  sub->add_option("--t-cap", o.t_cap, "seeding potential cap");
  sub->add_option("--tol", o.tol, "tracing tolerance");
  sub->add_option("--max-depth", o.max_depth, "maximal pullback depth");
  sub->add_option("--land-tol", o.land_tol, "landing convergence tolerance");
}

void add_partition_options(CLI::App* sub, Options& o, bool files = true) {
  sub->add_option("--policy", o.policy, "base ray policy: right or left");
  sub->add_option("--base-v", o.base_v, "address of the base ray at v");
  sub->add_option("--base-vprime", o.base_vprime, "address of the base ray at v'");
  if (!files) return;
  sub->add_option("--partition-file", o.partition_file, "load a saved partition (its map replaces the map options)");
  sub->add_option("--export-partition", o.export_partition, "save the built partition as JSON");
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
}

int cmd_find_params(const Options& o, std::ostream& out) {
  json j{{"version", io::kSchemaVersion}, {"k", o.k}};
  MapParams p;
  if (o.fixed_value_family || o.family == "fixed-value") {
    std::optional<cplx> seed;
    if (!o.seed.empty()) seed = parse_complex(o.seed, "--seed");
    p = solve_fixed_value_family(o.k, seed);
    j["family"] = "fixed-value";
    j["residual"] = std::abs(fixed_value_family_residual(p.a, o.k));
  } else {
    p = map_params(o);
    j["family"] = o.params_file.empty() ? o.family : "file";
    j["residual"] = std::abs(evaluate(p, evaluate(p, p.v)) - evaluate(p, p.v)) +
                    std::abs(evaluate(p, evaluate(p, p.v_prime)) - evaluate(p, p.v_prime));
  }
  j.update(io::params_to_json(p));
  j["critical_values"] = json::array({io::complex_to_json(p.v), io::complex_to_json(p.v_prime)});
  const PostsingularData post = compute_postsingular(p);
  json pts = json::array(), mult = json::array();
  for (cplx z : post.points) pts.push_back(io::complex_to_json(z));
  for (cplx m : post.multipliers) mult.push_back(io::complex_to_json(m));
  j["postsingular"] = {{"points", pts},
                       {"multipliers", mult},
                       {"preperiod_v", post.preperiod_v},
                       {"period_v", post.period_v},
                       {"preperiod_vprime", post.preperiod_vprime},
                       {"period_vprime", post.period_vprime}};
  emit(out, j);
  return 0;
}

int cmd_trace_ray(const Options& o, std::ostream& out) {
  const MapParams p = map_params(o);
  const ExternalAddress s = parse_address_arg(o.address, "--address");
  const auto t = split_numbers(o.t_range, "--t", ':');
  if (t.size() != 3 || t[2] < 1.0 || t[2] != std::floor(t[2])) {
    throw CLI::ValidationError("--t", "expected t_min:t_max:n");
  }
  const RayPath path = trace_ray(p, s, t[0], t[1], static_cast<std::size_t>(t[2]), trace_config(o), o.max_step);
  if (o.out.empty()) {
    io::write_ray_csv(path, out);
    return 0;
  }
  std::ostringstream csv;
  io::write_ray_csv(path, csv);
  write_text(o.out, csv.str());
  double worst = 0.0;
  for (const auto& smp : path.samples) worst = std::max(worst, smp.residual);
  emit(out, {{"version", io::kSchemaVersion},
             {"address", to_literal(s)},
             {"samples", path.samples.size()},
             {"max_residual", worst},
             {"out", o.out}});
  return 0;
}

int cmd_land(const Options& o, std::ostream& out) {
  const MapParams p = map_params(o);
  const ExternalAddress s = parse_address_arg(o.address, "--address");
  json j = io::to_json(landing_point(p, s, trace_config(o)));
  j["address"] = to_literal(s);
  emit(out, j);
  return 0;
}

int cmd_itinerary(const Options& o, std::ostream& out) {
  const MapParams p = map_params(o);
  const PartitionModel part = partition_for(o, p);
  json j;
  if (!o.point.empty()) {
    j = io::to_json(itinerary_of_point(part, parse_complex(o.point, "--point"), o.length));
    j["point"] = io::complex_to_json(parse_complex(o.point, "--point"));
  } else {
    const ExternalAddress s = parse_address_arg(o.address, "--address or --point");
    j = io::to_json(itinerary_of_address(part, s, o.length, trace_config(o)));
    j["address"] = to_literal(s);
  }
  emit(out, j);
  return 0;
}

int cmd_classify(const Options& o, std::ostream& out) {
  if (o.point.empty()) throw CLI::ValidationError("--point", "is required");
  const MapParams p = map_params(o);
  const PartitionModel part = partition_for(o, p);
  ClassifyBudget budget;
  budget.iter = o.iter;
  budget.itin = o.itin_length;
  budget.search_bound = o.search_bound;
  budget.depth = o.depth;
  budget.trace = trace_config(o);
  const cplx z = parse_complex(o.point, "--point");
  json j = io::to_json(classify_point(part, z, budget));
  j["point"] = io::complex_to_json(z);
  emit(out, j);
  return 0;
}

int cmd_boxdim(const Options& o, std::ostream& out) {
  const MapParams p = map_params(o);
  json j;
  if (o.mode == "rays") {
    const Window w = parse_window(o.window.empty() ? "-8,-8,8,8" : o.window);
    const RayFamilyReport r = ray_family_dimension(p, o.bound, o.tail_depth, o.t_floor, w, trace_config(o), o.scales);
    j = io::to_json(r.box);
    j["rays"] = r.rays;
    j["skipped"] = r.skipped;
    j["config"] = {{"bound", o.bound}, {"tail_depth", o.tail_depth}, {"t_floor", o.t_floor}};
  } else if (o.mode == "escaping") {
    const Window w = parse_window(o.window.empty() ? "-5,-5,5,5" : o.window);
    const std::size_t budget = o.budget == 0 ? 100 : o.budget;
    const EscapingSetReport r = escaping_set_dimension(p, w, o.resolution, budget, o.scales);
    j = io::to_json(r.box);
    j["escaped"] = r.escaped;
    j["fraction"] = r.fraction;
    j["config"] = {{"resolution", o.resolution}, {"budget", budget}};
  } else {
    throw CLI::ValidationError("--mode", "must be rays or escaping");
  }
  j["mode"] = o.mode;
  emit(out, j);
  return 0;
}

int cmd_escape_stats(const Options& o, std::ostream& out) {
  const MapParams p = map_params(o);
  const Window w = parse_window(o.window.empty() ? "-10,-10,10,10" : o.window);
  const std::size_t budget = o.budget == 0 ? 50 : o.budget;
  json j = io::to_json(escape_fraction(p, w, o.samples, budget, o.rng_seed));
  j["window"] = io::window_to_json(w);
  j["seed"] = o.rng_seed;
  j["generator"] = "mt19937_64";
  emit(out, j);
  return 0;
}

int cmd_render(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw CLI::ValidationError("--out", "is required");
  RenderJob job;
  job.params = map_params(o);
  job.window = parse_window(o.window.empty() ? "-5,-5,5,5" : o.window);
  const auto x = o.size.find('x');
  if (x == std::string::npos) throw CLI::ValidationError("--size", "expected WxH");
  const auto wh = split_numbers(o.size.substr(0, x) + "," + o.size.substr(x + 1), "--size");
  if (wh.size() != 2 || wh[0] < 1 || wh[1] < 1) throw CLI::ValidationError("--size", "expected WxH");
  job.width = static_cast<std::size_t>(wh[0]);
  job.height = static_cast<std::size_t>(wh[1]);
  job.budget = o.budget == 0 ? 50 : o.budget;
  job.palette = o.palette;
  job.partition.policy = o.policy == "left" ? RayPolicy::Left : RayPolicy::Right;
  if (!o.base_v.empty()) job.partition.base_v = parse_address_arg(o.base_v, "--base-v");
  if (!o.base_vprime.empty()) job.partition.base_vprime = parse_address_arg(o.base_vprime, "--base-vprime");
  for (const auto& ov : o.overlays) {
    if (ov == "partition") {
      job.overlays.push_back({OverlayKind::Partition, std::nullopt});
    } else if (ov == "postsingular") {
      job.overlays.push_back({OverlayKind::Postsingular, std::nullopt});
    } else if (ov.rfind("ray:", 0) == 0) {
      job.overlays.push_back({OverlayKind::Ray, parse_address_arg(ov.substr(4), "--overlay")});
    } else {
      throw CLI::ValidationError("--overlay", "unknown overlay " + ov);
    }
  }
  const Image img = render_escape(job);
  write_ppm(img, o.out);
  emit(out, {{"version", io::kSchemaVersion},
             {"out", o.out},
             {"width", img.width},
             {"height", img.height},
             {"budget", job.budget},
             {"window", io::window_to_json(job.window)}});
  return 0;
}

std::unique_ptr<CLI::App> make_app(Options& o) {
  auto app = std::make_unique<CLI::App>("Dynamic rays, landing points and itineraries of cosine maps", "cosrays");
  app->require_subcommand(1);
  auto config = [&](CLI::App* sub) { sub->add_option("--config", o.config, "JSON config file (needs \"version\": 1)"); };

  auto* fp = app->add_subcommand("find-params", "solve for postsingularly preperiodic parameters");
  add_map_options(fp, o);
  fp->add_flag("--fixed-value-family", o.fixed_value_family, "solve a (1 - sin 2a) = pi k with b = -a");
  fp->add_option("--seed", o.seed, "Newton seed as re,im");

  auto* tr = app->add_subcommand("trace-ray", "sample a dynamic ray as CSV");
  add_map_options(tr, o);
  add_trace_options(tr, o);
  tr->add_option("--address", o.address, "external address literal, e.g. \"(0R)*\"");
  tr->add_option("--t", o.t_range, "t_min:t_max:n");
  tr->add_option("--max-step", o.max_step, "maximal distance between consecutive samples");
  tr->add_option("--out", o.out, "CSV output path (default stdout)");

  auto* la = app->add_subcommand("land", "landing point of a bounded address");
  add_map_options(la, o);
  add_trace_options(la, o);
  la->add_option("--address", o.address, "external address literal");

  auto* it = app->add_subcommand("itinerary", "itinerary of a point or a ray");
  add_map_options(it, o);
  add_trace_options(it, o);
  add_partition_options(it, o);
  it->add_option("--point", o.point, "point as re,im");
  it->add_option("--address", o.address, "external address literal");
  it->add_option("--length", o.length, "number of entries");

  auto* cl = app->add_subcommand("classify", "classify a point");
  add_map_options(cl, o);
  add_trace_options(cl, o);
  add_partition_options(cl, o);
  cl->add_option("--point", o.point, "point as re,im");
  cl->add_option("--iter", o.iter, "iteration budget");
  cl->add_option("--itin-length", o.itin_length, "itinerary length");
  cl->add_option("--search-bound", o.search_bound, "strip bound for address search");
  cl->add_option("--depth", o.depth, "maximal address period");

  auto* bd = app->add_subcommand("boxdim", "box-counting dimension of rays or of the escaping set");
  add_map_options(bd, o);
  add_trace_options(bd, o);
  bd->add_option("--mode", o.mode, "rays or escaping");
  bd->add_option("--bound", o.bound, "strip bound M");
  bd->add_option("--tail-depth", o.tail_depth, "maximal period");
  bd->add_option("--t-floor", o.t_floor, "lowest potential sampled");
  bd->add_option("--window", o.window, "x0,y0,x1,y1");
  bd->add_option("--resolution", o.resolution, "grid size for escaping mode");
  bd->add_option("--budget", o.budget, "iteration budget for escaping mode (default 100)");
  bd->add_option("--scales", o.scales, "number of dyadic scales");

  auto* es = app->add_subcommand("escape-stats", "escaping fraction of uniform samples");
  add_map_options(es, o);
  es->add_option("--window", o.window, "x0,y0,x1,y1");
  es->add_option("--samples", o.samples, "number of samples");
  es->add_option("--budget", o.budget, "iteration budget (default 50)");
  es->add_option("--seed", o.rng_seed, "generator seed");

  auto* re = app->add_subcommand("render", "escape-time image as binary PPM");
  add_map_options(re, o);
  add_partition_options(re, o, false);
  re->add_option("--window", o.window, "x0,y0,x1,y1");
  re->add_option("--size", o.size, "WxH");
  re->add_option("--budget", o.budget, "iteration budget (default 50)");
  re->add_option("--overlay", o.overlays, "partition, postsingular or ray:<address>; repeatable");
  re->add_option("--palette", o.palette, "palette name");
  re->add_option("--out", o.out, "PPM output path");

  for (auto* sub : app->get_subcommands({})) config(sub);
  return app;
}

// Options named in the config file and absent from the command line, as
// extra command-line tokens.
std::vector<std::string> config_tokens(const json& cfg, CLI::App* sub) {
  std::vector<std::string> extra;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "version") continue;
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt || key == "config") throw CLI::ValidationError("--config", "unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back(flag);
    } else if (value.is_string()) {
      extra.insert(extra.end(), {flag, value.get<std::string>()});
    } else if (value.is_number()) {
      extra.insert(extra.end(), {flag, value.dump()});
    } else if (value.is_array() && std::all_of(value.begin(), value.end(), [](const json& v) { return v.is_number(); })) {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + v.dump();
      extra.insert(extra.end(), {flag, joined});
    } else if (value.is_array()) {
      for (const auto& v : value) {
        if (!v.is_string()) throw CLI::ValidationError("--config", "bad value for '" + key + "'");
        extra.insert(extra.end(), {flag, v.get<std::string>()});
      }
    } else {
      throw CLI::ValidationError("--config", "bad value for '" + key + "'");
    }
  }
  return extra;
}

int dispatch(const std::string& name, const Options& o, std::ostream& out) {
  if (name == "find-params") return cmd_find_params(o, out);
  if (name == "trace-ray") return cmd_trace_ray(o, out);
  if (name == "land") return cmd_land(o, out);
  if (name == "itinerary") return cmd_itinerary(o, out);
  if (name == "classify") return cmd_classify(o, out);
  if (name == "boxdim") return cmd_boxdim(o, out);
  if (name == "escape-stats") return cmd_escape_stats(o, out);
  return cmd_render(o, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  auto app = make_app(o);
  auto parse = [&](std::vector<std::string> tokens) {
    std::reverse(tokens.begin(), tokens.end());
    app->parse(tokens);
  };
  try {
    parse(args);
    CLI::App* sub = app->get_subcommands().front();
    if (!o.config.empty()) {
      json cfg;
      try {
        cfg = io::load_config(o.config);
      } catch (const Error& e) {
        throw CLI::ValidationError("--config", e.what());
      }
      std::vector<std::string> full = args;
      const auto extra = config_tokens(cfg, sub);
      full.insert(full.end(), extra.begin(), extra.end());
      o = Options{};
      app = make_app(o);
      parse(full);
    }
    return dispatch(app->get_subcommands().front()->get_name(), o, out);
  } catch (const CLI::CallForHelp&) {
    out << app->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app->help();
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cosrays
