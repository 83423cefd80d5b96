#include <cmath>
#include <random>

#include "doctest.h"

#include "cosrays/errors.hpp"
#include "cosrays/symbolic.hpp"

using namespace cosrays;

namespace {

// Reference values computed with 40-digit arithmetic.
constexpr double kF3of1 = 96.02236556502687991;
constexpr double kLn4 = 1.386294361119890618;

ExternalAddress random_periodic(std::mt19937_64& rng, int max_abs, int max_period) {
  std::uniform_int_distribution<int> idx(-max_abs, max_abs);
  std::uniform_int_distribution<int> len(1, max_period);
  std::bernoulli_distribution right(0.5);
  std::vector<SymbolEntry> block(static_cast<std::size_t>(len(rng)));
  for (auto& e : block) e = {idx(rng), right(rng) ? Side::R : Side::L};
  return ExternalAddress::periodic({}, block);
}

ExternalAddress growth_address(double x0) { return ExternalAddress({}, GrowthTail{x0, Side::R}); }

}  // namespace

TEST_SUITE("symbolic") {

TEST_CASE("growth iterate values") {
  CHECK(growth_iterate(0.0, 5).value == 0.0);
  CHECK(growth_iterate(1.0, 1).value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
  CHECK(growth_iterate(1.0, 3).value == doctest::Approx(kF3of1).epsilon(1e-13));
  CHECK_FALSE(growth_iterate(1.0, 3).saturated);

  const GrowthValue big = growth_iterate(10.0, 3);
  CHECK(big.saturated);
  CHECK(std::isinf(big.value));

  CHECK(growth_inverse(growth(2.5)) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(log_growth_iterate(2.0, 3) == doctest::Approx(594.2944153807537).epsilon(1e-13));
}

TEST_CASE("growth iterate is strictly increasing in t") {
  for (std::size_t k = 1; k <= 4; ++k) {
    double prev = -1.0;
    for (double t = 0.05; t < 3.0; t += 0.05) {
      const GrowthValue g = growth_iterate(t, k);
      if (g.saturated) break;
      CHECK(g.value > prev);
      prev = g.value;
    }
  }
}

TEST_CASE("shift examples") {
  const auto zero = ExternalAddress::constant(sym_r(0));
  CHECK(zero.shift().same_sequence(zero));

  const auto s = ExternalAddress::periodic({sym_l(3), sym_r(1)}, {sym_r(0)});
  const auto t = s.shift();
  REQUIRE(t.prefix().size() == 1);
  CHECK(t.prefix()[0] == sym_r(1));
  CHECK(std::get<PeriodicTail>(t.tail()).block == std::vector<SymbolEntry>{sym_r(0)});

  const auto two = ExternalAddress::periodic({}, {sym_r(1), sym_l(2)});
  CHECK(std::get<PeriodicTail>(two.shift().tail()).block == std::vector<SymbolEntry>{sym_l(2), sym_r(1)});
}

TEST_CASE("shifting a full period returns the address") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_periodic(rng, 5, 6);
    const std::size_t p = std::get<PeriodicTail>(s.tail()).block.size();
    const auto back = s.shift(p);
    for (std::size_t k = 1; k <= 64; ++k) REQUIRE(back.entry(k) == s.entry(k));
  }
}

TEST_CASE("shift agrees with entries for generator tails") {
  BoundedGenerator g{[](std::uint64_t j) { return SymbolEntry{static_cast<std::int64_t>(j % 3), Side::L}; }, 2, 0,
                     "mod3"};
  const ExternalAddress s({sym_r(4)}, g);
  const auto t = s.shift(2);
  for (std::size_t k = 1; k <= 30; ++k) CHECK(t.entry(k) == s.entry(k + 2));

  const auto gr = growth_address(1.0);
  for (std::size_t k = 1; k <= 3; ++k) CHECK(gr.shift().entry(k) == gr.entry(k + 1));
}

TEST_CASE("exponential boundedness") {
  CHECK(is_exponentially_bounded(ExternalAddress::constant(sym_r(0))));
  CHECK(is_exponentially_bounded(ExternalAddress::periodic({sym_r(1000000)}, {sym_l(0)})));
  CHECK(is_exponentially_bounded(growth_address(2.0)));

  // Direct check of |s_k| <= F^{k-1}(4) on the computable entries.
  const auto gr = growth_address(2.0);
  double fx = 4.0;
  for (std::size_t k = 1; k <= 3; ++k) {
    CHECK(static_cast<double>(gr.entry(k).index) <= fx);
    fx = std::expm1(fx);
  }

  BoundedGenerator liar{[](std::uint64_t j) { return SymbolEntry{static_cast<std::int64_t>(j), Side::R}; }, 5, 0, "ramp"};
  CHECK_FALSE(is_exponentially_bounded(ExternalAddress({}, liar)));
  CHECK_THROWS_AS(is_exponentially_bounded(gr, 0), Error);
}

TEST_CASE("minimal potential of bounded addresses is zero") {
  CHECK(minimal_potential(ExternalAddress::constant(sym_r(0))).t == 0.0);
  CHECK(minimal_potential(ExternalAddress::periodic({sym_r(5), sym_r(5)}, {sym_r(0)})).t == 0.0);
  CHECK(minimal_potential(ExternalAddress::periodic({}, {sym_l(-3), sym_r(2)})).t == 0.0);
}

TEST_CASE("minimal potential of the growth family") {
  const double ts = minimal_potential(growth_address(3.0)).t;
  CHECK(ts == doctest::Approx(kLn4).epsilon(1e-8));

  // Independent ratio check: log|s_k| - log F^k(t) on the computable entries.
  auto log_ratio = [](double t, int k) {
    double s = 3.0, f = t;
    for (int j = 1; j < k; ++j) s = std::expm1(s);
    for (int j = 0; j < k; ++j) f = std::expm1(f);
    return std::log(std::round(s)) - std::log(f);
  };
  CHECK(log_ratio(kLn4 + 0.01, 3) < log_ratio(kLn4 + 0.01, 2));
  CHECK(log_ratio(kLn4 - 0.01, 3) > log_ratio(kLn4 - 0.01, 2));

  BoundedGenerator liar{[](std::uint64_t j) { return SymbolEntry{static_cast<std::int64_t>(j), Side::R}; }, 5, 0, "ramp"};
  CHECK_THROWS_AS(minimal_potential(ExternalAddress({}, liar)), Error);
}

TEST_CASE("minimal potential is carried by the growth function under the shift") {
  for (double x0 : {1.0, 2.0, 3.0}) {
    const auto s = growth_address(x0);
    const double ts = minimal_potential(s).t;
    const double tss = minimal_potential(s.shift()).t;
    CHECK(growth(ts) == doctest::Approx(tss).epsilon(1e-6));
  }
}

TEST_CASE("bounded ratios fall below 1e-6") {
  // 24 iterations: at t = 0.1, F^k(t) needs 22 steps to exceed 10^3.
  for (double t : {0.1, 0.5, 1.0, 3.0}) {
    double f = t;
    bool below = false;
    double prev = 1e300;
    bool monotone = true;
    for (int k = 1; k <= 24 && !below; ++k) {
      f = std::expm1(f);
      const double r = 1000.0 / f;
      if (f > 1000.0) monotone = monotone && r < prev;
      prev = r;
      below = r < 1e-6;
    }
    CHECK(below);
    CHECK(monotone);
  }
}

TEST_CASE("literal syntax") {
  const auto s = parse_address("3R 1L (0R 2R)*");
  CHECK(s.prefix() == std::vector<SymbolEntry>{sym_r(3), sym_l(1)});
  CHECK(std::get<PeriodicTail>(s.tail()).block == std::vector<SymbolEntry>{sym_r(0), sym_r(2)});
  CHECK(to_literal(s) == "3R 1L (0R 2R)*");
  CHECK(to_literal(parse_address("(0R)*")) == "(0R)*");
  CHECK(to_literal(parse_address("  -2L   ( 1R  0L )* ")) == "-2L (1R 0L)*");

  CHECK_THROWS_AS(parse_address("3R 1L"), Error);
  CHECK_THROWS_AS(parse_address("3X (0R)*"), Error);
  CHECK_THROWS_AS(parse_address("()*"), Error);
  CHECK_THROWS_AS(parse_address("(0R)* 1R"), Error);
  CHECK_THROWS_AS(parse_address("(0R"), Error);
}

TEST_CASE("printer output re-parses to the same representation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = random_periodic(rng, 40, 5);
    const auto prefix = random_periodic(rng, 1000, 3);
    for (const auto& e : std::get<PeriodicTail>(prefix.tail()).block) s = s.prepend(e);
    const std::string lit = to_literal(s);
    const auto back = parse_address(lit);
    REQUIRE(back.prefix() == s.prefix());
    REQUIRE(std::get<PeriodicTail>(back.tail()).block == std::get<PeriodicTail>(s.tail()).block);
    REQUIRE(to_literal(back) == lit);
  }
}

TEST_CASE("canonical form") {
  const auto a = parse_address("1R 0L (1R 0L)*");
  const auto b = parse_address("(1R 0L 1R 0L)*");
  CHECK(to_literal(a.canonical()) == "(1R 0L)*");
  CHECK(to_literal(b.canonical()) == "(1R 0L)*");
  CHECK(a.same_sequence(b));
  CHECK_FALSE(a.same_sequence(parse_address("(0L 1R)*")));
  CHECK(to_literal(parse_address("2R 0L (1R 0L)*").canonical()) == "2R (0L 1R)*");
}

TEST_CASE("half integers") {
  CHECK(HalfInteger::from_double(1.5).twice == 3);
  CHECK(HalfInteger::from_double(-0.5).twice == -1);
  CHECK(to_string(HalfInteger{3}) == "3/2");
  CHECK(to_string(HalfInteger{-4}) == "-2");
  CHECK(HalfInteger{1} + 1 == HalfInteger{3});
  CHECK_THROWS_AS(HalfInteger::from_double(0.3), Error);
}

TEST_CASE("entry access") {
  const auto s = ExternalAddress::constant(sym_r(0));
  CHECK_THROWS_AS(s.entry(0), Error);
  const auto gr = growth_address(3.0);
  CHECK(gr.entry(1).index == 3);
  CHECK(gr.entry(2).index == 19);
  CHECK(gr.log_magnitude(4) > 1e7);
  CHECK_THROWS_AS(gr.entry(4), Error);
}

}  // TEST_SUITE
