#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "cli.hpp"
#include "io.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cosrays::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(const std::vector<std::string>& args) {
  const Run r = run(args);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const json j = json::parse(r.out);
  CHECK(j.at("version") == 1);
  return j;
}

fs::path scratch_dir() {
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  fs::path d = fs::temp_directory_path() / ("cosrays_cli_" + std::to_string(stamp));
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("trace-ray along the positive real axis") {
  const fs::path dir = scratch_dir();
  const std::string csv = (dir / "ray.csv").string();
  const json j = run_json({"trace-ray", "--family", "sinh", "--k", "1", "--address", "(0R)*", "--t", "0.5:10:64",
                           "--out", csv});
  CHECK(j.at("samples").get<int>() >= 64);

  std::ifstream f(csv);
  std::string line;
  std::getline(f, line);
  CHECK(line == "t,re,im,residual");
  int rows = 0;
  while (std::getline(f, line)) {
    double t, re, im, res;
    char c;
    std::istringstream row(line);
    row >> t >> c >> re >> c >> im >> c >> res;
    REQUIRE(row);
    CHECK(std::abs(im) < 1e-9);
    CHECK(re > 0.0);
    ++rows;
  }
  CHECK(rows >= 64);
  fs::remove_all(dir);
}

TEST_CASE("land, find-params and classify") {
  const json land = run_json({"land", "--family", "sinh", "--k", "1", "--address", "(0R)*"});
  CHECK(land.at("converged") == true);
  CHECK(std::hypot(land.at("landing")[0].get<double>(), land.at("landing")[1].get<double>()) < 1e-8);

  const json fp = run_json({"find-params", "--fixed-value-family", "--k", "1"});
  CHECK(fp.at("residual").get<double>() < 1e-12);
  CHECK(fp.contains("a"));
  CHECK(fp.contains("b"));

  const json sinh = run_json({"find-params", "--family", "sinh", "--k", "2"});
  CHECK(sinh.at("residual").get<double>() < 1e-12);

  const json cl = run_json({"classify", "--family", "sinh", "--k", "1", "--point", "0,0"});
  CHECK(cl.at("kind") == "LandingPoint");

  const json it = run_json({"itinerary", "--family", "sinh", "--k", "1", "--point", "0,0", "--length", "10"});
  CHECK(it.at("itinerary").size() == 10);
  for (const auto& u : it.at("itinerary")) CHECK(u == "0");

  const json es = run_json({"escape-stats", "--samples", "2000", "--seed", "4"});
  CHECK(es.at("generator") == "mt19937_64");
  CHECK(es.at("fraction").get<double>() >= 0.9);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"land", "--family", "sinh", "--bogus", "1"}).code == 2);
  CHECK(run({"trace-ray", "--family", "sinh", "--address", "(0R)*", "--t", "1:2"}).code == 2);
  CHECK(run({"land", "--family", "sinh", "--k", "0", "--address", "(0R)*"}).code == 1);
  CHECK(run({"land", "--family", "sinh", "--k", "1", "--address", "(0Q)*"}).code != 0);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("trace-ray") != std::string::npos);
}

TEST_CASE("config files merge under explicit flags") {
  const fs::path dir = scratch_dir();
  const fs::path cfg = dir / "cfg.json";
  write_file(cfg, R"({"version": 1, "samples": 3000, "budget": 40, "window": [-4, -4, 4, 4], "seed": 9})");

  const json a = run_json({"escape-stats", "--config", cfg.string()});
  CHECK(a.at("n_samples") == 3000);
  CHECK(a.at("budget") == 40);
  CHECK(a.at("seed") == 9);

  const json b = run_json({"escape-stats", "--config", cfg.string(), "--samples", "1500"});
  CHECK(b.at("n_samples") == 1500);
  CHECK(b.at("budget") == 40);

  write_file(dir / "v2.json", R"({"version": 2, "samples": 3000})");
  CHECK(run({"escape-stats", "--config", (dir / "v2.json").string()}).code == 2);
  write_file(dir / "unknown.json", R"({"version": 1, "colour": "red"})");
  CHECK(run({"escape-stats", "--config", (dir / "unknown.json").string()}).code == 2);
  CHECK(run({"escape-stats", "--config", (dir / "missing.json").string()}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("render writes identical PPM files") {
  const fs::path dir = scratch_dir();
  std::vector<std::string> args{"render", "--family", "sinh", "--k", "1", "--size", "96x64", "--overlay",
                                "postsingular", "--overlay", "ray:(1R)*", "--out"};
  auto first = args, second = args;
  first.push_back((dir / "a.ppm").string());
  second.push_back((dir / "b.ppm").string());
  const json j = run_json(first);
  CHECK(j.at("width") == 96);
  run_json(second);
  const std::string pa = slurp(dir / "a.ppm"), pb = slurp(dir / "b.ppm");
  CHECK(pa.rfind("P6\n96 64\n255\n", 0) == 0);
  CHECK(pa.size() == 13 + 3 * 96 * 64);
  CHECK(pa == pb);
  CHECK(run({"render", "--size", "96x64"}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("exported partitions reload with identical decisions") {
  const fs::path dir = scratch_dir();
  const std::string file = (dir / "part.json").string();
  const json a = run_json({"itinerary", "--family", "sinh", "--k", "1", "--point", "0.3,2.1", "--length", "6",
                           "--export-partition", file});
  const json saved = json::parse(slurp(file));
  CHECK(saved.at("version") == 1);
  CHECK(saved.at("curves").size() == 4);
  CHECK(saved.at("base_v") == "1R (0L)*");

  const json b = run_json({"itinerary", "--partition-file", file, "--point", "0.3,2.1", "--length", "6"});
  CHECK(a.at("itinerary") == b.at("itinerary"));
  const json c = run_json({"classify", "--partition-file", file, "--point", "0,0"});
  CHECK(c.at("kind") == "LandingPoint");

  const auto built = cosrays::build_partition(cosrays::sinh_family_params(1));
  const auto loaded = cosrays::io::partition_from_json(json::parse(cosrays::io::to_json(built).dump()));
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> re(-40.0, 40.0), im(-20.0, 20.0);
  int same = 0;
  for (int i = 0; i < 10000; ++i) {
    const cosrays::cplx z{re(rng), im(rng)};
    const auto x = cosrays::locate(built, z), y = cosrays::locate(loaded, z);
    same += x.label == y.label && x.boundary_distance == y.boundary_distance;
  }
  CHECK(same == 10000);

  write_file(dir / "broken.json", R"({"version": 1, "a": [1, 0], "b": [1, 0]})");
  CHECK(run({"itinerary", "--partition-file", (dir / "broken.json").string(), "--point", "0,0"}).code == 1);
  fs::remove_all(dir);
}

}  // TEST_SUITE
