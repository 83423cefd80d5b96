#include <cmath>
#include <random>

#include "doctest.h"

#include "cosrays/classifier.hpp"
#include "cosrays/escape.hpp"

using namespace cosrays;

namespace {

const PartitionModel& sinh_partition() {
  static const PartitionModel part = build_partition(sinh_family_params(1));
  return part;
}

ExternalAddress addr(const char* lit) { return parse_address(lit); }

std::vector<cplx> forward_orbit(const MapParams& p, cplx z, std::size_t steps) {
  std::vector<cplx> out{z};
  for (std::size_t k = 0; k < steps && std::abs(out.back().real()) <= kMaxRealPart; ++k) {
    out.push_back(evaluate(p, out.back()));
  }
  return out;
}

bool contains(const std::vector<ExternalAddress>& v, const char* lit) {
  const auto want = addr(lit);
  for (const auto& s : v) {
    if (s.same_sequence(want)) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("classifier") {

TEST_CASE("escape kernel") {
  const auto p = sinh_family_params(1);
  CHECK_FALSE(escape_time(p, 0.0, 500).escaped);
  const auto r = escape_time(p, 5.0, 50);
  CHECK(r.escaped);
  CHECK(r.re_sign == 1);
  CHECK(escape_time(p, -5.0, 50).re_sign == -1);
  CHECK_FALSE(escape_time(p, {800.0, 1e20}, 50).escaped);
  CHECK(escape_time(p, {800.0, 0.0}, 50).escaped);
  // More budget never loses an escape.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 500; ++i) {
    const cplx z{u(rng), u(rng)};
    if (escape_time(p, z, 10).escaped) CHECK(escape_time(p, z, 40).escaped);
  }
}

TEST_CASE("addresses from escaping orbits") {
  const auto p = sinh_family_params(1);
  const auto a = address_from_escaping_orbit(p, forward_orbit(p, trace_point(p, addr("(0R)*"), 2.0).z, 5));
  REQUIRE(a.size() >= 3);
  for (auto e : a) CHECK(e == sym_r(0));

  const auto b = address_from_escaping_orbit(p, forward_orbit(p, trace_point(p, addr("2L (1R)*"), 1.5).z, 5));
  REQUIRE(b.size() >= 2);
  CHECK(b[0] == sym_l(2));
  CHECK(b[1] == sym_r(1));

  CHECK_THROWS_AS(address_from_escaping_orbit(p, {0.0, 0.0, 0.0}), Error);
  try {
    address_from_escaping_orbit(p, {0.0, 0.0, 0.0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotEscaping);
  }
  try {
    address_from_escaping_orbit(p, {{10.0, kPi}, 100.0, 600.0});
    FAIL("expected AmbiguousStrip");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AmbiguousStrip);
    CHECK(e.step == std::optional<std::size_t>{1});
  }
}

TEST_CASE("potential estimates") {
  const auto p = sinh_family_params(1);
  for (const char* lit : {"(0R)*", "(1R 0L)*", "-2L (2R)*"}) {
    for (double t : {1.0, 2.0, 3.5, 5.0}) {
      const auto orbit = forward_orbit(p, trace_point(p, addr(lit), t).z, 8);
      CHECK(std::abs(estimate_potential(p, orbit) - t) < 1e-3 * t);
    }
  }
}

TEST_CASE("classification examples for pi sinh") {
  const auto& part = sinh_partition();
  const auto& p = part.params;

  const auto on = classify_point(part, trace_point(p, addr("(0R)*"), 2.0).z);
  REQUIRE(on.kind == ClassKind::OnRay);
  CHECK(on.prefix.front() == sym_r(0));
  CHECK(std::abs(on.potential - 2.0) < 0.1);

  const auto zero = classify_point(part, 0.0);
  REQUIRE(zero.kind == ClassKind::LandingPoint);
  CHECK(contains(zero.candidates, "(0R)*"));
  CHECK(contains(zero.candidates, "(0L)*"));
  for (const auto& s : zero.candidates) CHECK(std::abs(landing_point(p, s).z) < 1e-6);

  CHECK(classify_point(part, {0.0, kPi / 2}).kind == ClassKind::PostsingularOrPreimage);

  ClassifyBudget tiny;
  tiny.iter = 1;
  tiny.itin = 3;
  const auto slow = classify_point(part, trace_point(p, addr("(0R)*"), 0.5).z, tiny);
  CHECK(slow.kind == ClassKind::Undecided);
  CHECK(slow.budget_spent <= 1);
}

TEST_CASE("itinerary matching") {
  const auto& part = sinh_partition();
  Itinerary zeros;
  zeros.entries.assign(12, HalfInteger{0});
  const auto m = match_itinerary_to_address(part, zeros, 3, 8);
  CHECK(contains(m, "(0R)*"));
  CHECK(contains(m, "(0L)*"));
  for (const auto& s : m) CHECK(itinerary_of_address(part, s, 12) == zeros);

  for (const char* lit : {"(1R 0L)*", "2L (1R)*", "(-1L 0R 1R)*"}) {
    const Itinerary it = itinerary_of_address(part, addr(lit), 12);
    const auto found = match_itinerary_to_address(part, it, 3, 8);
    CHECK(contains(found, lit));
    for (const auto& s : found) CHECK(itinerary_of_address(part, s, 12) == it);
  }

  Itinerary five = zeros;
  five.entries[0] = HalfInteger{10};
  CHECK_THROWS_AS(match_itinerary_to_address(part, five, 0, 8), SearchExhaustedError);
}

TEST_CASE("on-ray round trip") {
  const auto& part = sinh_partition();
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> idx(-2, 2), coin(0, 1), len(1, 3);
  std::uniform_real_distribution<double> pot(1.0, 5.0);
  int on_ray = 0, total = 0;
  for (int i = 0; i < 100; ++i) {
    std::vector<SymbolEntry> block;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) block.push_back({idx(rng), coin(rng) ? Side::R : Side::L});
    const auto s = ExternalAddress::periodic({}, block);
    const double t = pot(rng);
    const auto c = classify_point(part, trace_point(part.params, s, t).z);
    ++total;
    if (c.kind != ClassKind::OnRay) continue;
    CHECK(c.candidates.empty());
    bool prefix_ok = c.prefix.size() >= 2;
    for (std::size_t k = 0; k < c.prefix.size(); ++k) prefix_ok = prefix_ok && c.prefix[k] == s.entry(k + 1);
    CHECK(prefix_ok);
    CHECK(std::abs(c.potential - t) < 0.1 * t);
    ++on_ray;
  }
  CHECK(on_ray >= 99 * total / 100);
}

}  // TEST_SUITE
