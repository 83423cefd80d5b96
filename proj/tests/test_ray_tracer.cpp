#include <cmath>
#include <random>

#include "doctest.h"

#include "cosrays/errors.hpp"
#include "cosrays/ray_tracer.hpp"

using namespace cosrays;

namespace {

ExternalAddress addr(const char* lit) { return parse_address(lit); }

// Point of the positive real ray at potential t, by bisection on
// E^n(x) = F^n(t) - log(pi/2), which holds up to O(exp(-F^n(t))).
double real_ray_oracle(double t, int n) {
  double target = t;
  for (int i = 0; i < n; ++i) target = std::expm1(target);
  target -= std::log(kPi / 2);
  double lo = 0.0, hi = t + 5.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    double x = mid;
    for (int i = 0; i < n; ++i) x = kPi * std::sinh(x);
    (x < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("ray_tracer") {

TEST_CASE("positive real ray of pi sinh") {
  const auto p = sinh_family_params(1);
  const TracedPoint tp = trace_point(p, addr("(0R)*"), 2.0);
  CHECK(std::abs(tp.z.imag()) < 1e-9);
  CHECK(tp.z.real() > 0.0);
  CHECK(tp.z.real() == doctest::Approx(real_ray_oracle(2.0, 2)).epsilon(1e-12));
  CHECK(tp.residual < 1e-12);

  const TracedPoint tl = trace_point(p, addr("(0L)*"), 2.0);
  CHECK(std::abs(tl.z + tp.z) < 1e-9);
}

TEST_CASE("asymptotic regime") {
  for (const auto& p : {sinh_family_params(1), sinh_family_params(-2), solve_fixed_value_family(1)}) {
    const cplx z = trace_point(p, addr("(0R)*"), 40.0).z;
    CHECK(std::abs(z - (40.0 - p.alpha)) < 0.01);
  }
}

TEST_CASE("strip index inverts the strip center") {
  const auto p = MapParams::from_coefficients({0.3, -1.2}, {2.0, 0.7});
  for (int s = -4; s <= 4; ++s) {
    for (Side a : {Side::L, Side::R}) {
      for (Side b : {Side::L, Side::R}) CHECK(strip_index(p, strip_center_im(p, s, a, b) + 0.3, a, b) == s);
    }
  }
}

TEST_CASE("error paths") {
  const auto p = sinh_family_params(1);
  TraceConfig cfg;
  CHECK_THROWS_AS(trace_point(p, addr("(0R)*"), 0.0), Error);
  try {
    trace_point(p, addr("(0R)*"), 1e-3, cfg);
    FAIL("expected DepthExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DepthExhausted);
    REQUIRE(e.potential.has_value());
    CHECK(*e.potential == 1e-3);
  }
  cfg.T_cap = 800.0;
  CHECK_THROWS_AS(trace_point(p, addr("(0R)*"), 2.0, cfg), Error);

  const ExternalAddress growth_addr({}, GrowthTail{3.0, Side::R});
  CHECK_THROWS_AS(trace_point(p, growth_addr, 1.0), Error);
  CHECK(std::isfinite(trace_point(p, growth_addr, 2.0).z.real()));
}

TEST_CASE("ray sampling") {
  const auto p = sinh_family_params(1);
  const RayPath path = trace_ray(p, addr("(0R)*"), 0.5, 10.0, 32);
  REQUIRE(path.samples.size() >= 32);
  for (std::size_t i = 0; i < path.samples.size(); ++i) {
    const auto& s = path.samples[i];
    CHECK(std::abs(s.z.imag()) < 1e-9);
    CHECK(s.z.real() > 0.0);
    CHECK(s.residual < path.config_used.tol);
    if (i > 0) {
      CHECK(s.t < path.samples[i - 1].t);
      CHECK(s.z.real() < path.samples[i - 1].z.real());
      CHECK(std::abs(s.z - path.samples[i - 1].z) <= 0.25);
    }
  }

  const RayPath one = trace_ray(p, addr("(0R)*"), 3.0, 3.0, 5);
  CHECK(one.samples.size() == 1);

  const RayPath strip = trace_ray(p, addr("1R (0R)*"), 5.0, 30.0, 16);
  for (const auto& s : strip.samples) CHECK(std::abs(s.z.imag() - (kTwoPi - p.alpha.imag())) < 2.0);
}

TEST_CASE("functional equation") {
  const auto p1 = sinh_family_params(1);
  CHECK(verify_functional_equation(p1, addr("(0R)*"), 1.0) < 1e-6);
  const auto p2 = sinh_family_params(2);
  CHECK(verify_functional_equation(p2, addr("(1R 0L)*"), 2.0) < 1e-6);

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> idx(-3, 3), len(1, 4);
  std::bernoulli_distribution right(0.5);
  std::uniform_real_distribution<double> tt(0.1, 10.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<SymbolEntry> block(static_cast<std::size_t>(len(rng)));
    for (auto& e : block) e = {idx(rng), right(rng) ? Side::R : Side::L};
    const auto s = ExternalAddress::periodic({}, block);
    const double t = tt(rng);
    CHECK(verify_functional_equation(p1, s, t) < 1e-6);
  }
}

TEST_CASE("seed defect in the asymptotic regime") {
  const auto p = sinh_family_params(1);
  const double t = std::log1p(TraceConfig{}.T_cap - 1.0);
  CHECK(seed_defect(p, addr("(0R)*"), t) < 1e-2);
  CHECK(seed_defect(p, addr("(2L 1R)*"), t) < 1e-2);
}

TEST_CASE("deviation from the asymptotic line shrinks with t") {
  const auto p = sinh_family_params(1);
  for (const char* lit : {"(0R)*", "(1R)*", "(-2R)*"}) {
    const auto s = addr(lit);
    const cplx line_im(0.0, kTwoPi * s.entry(1).index);
    double prev = 1e9;
    for (double t : {20.0, 30.0, 40.0}) {
      const double dev = std::abs(trace_point(p, s, t).z - (t - p.alpha + line_im));
      CHECK(dev <= prev);
      prev = dev;
    }
    CHECK(prev < 0.01);
  }
  for (const char* lit : {"(0L)*", "(1L)*", "(-2L)*"}) {
    const auto s = addr(lit);
    const cplx line_im(0.0, kTwoPi * s.entry(1).index - kPi);
    const double d20 = std::abs(trace_point(p, s, 20.0).z - (-20.0 + p.beta + line_im));
    const double d40 = std::abs(trace_point(p, s, 40.0).z - (-40.0 + p.beta + line_im));
    CHECK(d40 < d20);
    CHECK(d40 < 0.01);
  }
}

TEST_CASE("translation by 2 pi i") {
  const auto p = solve_fixed_value_family(1);
  for (double t : {0.3, 1.0, 4.0}) {
    const cplx z0 = trace_point(p, addr("0R (1L 0R)*"), t).z;
    const cplx z1 = trace_point(p, addr("1R (1L 0R)*"), t).z;
    CHECK(std::abs(z1 - z0 - cplx(0, kTwoPi)) < 1e-9);
  }
}

TEST_CASE("orbit growth diagnostic") {
  const auto p = sinh_family_params(1);
  for (const char* lit : {"(1R)*", "(2L -1R)*"}) {
    cplx w = trace_point(p, addr(lit), 1.5).z;
    // log+|Im z_k| / log|Re z_k| along the forward orbit, while representable
    std::vector<double> ratios;
    for (int k = 0; k < 10 && std::abs(w.real()) < 700.0; ++k) {
      if (std::abs(w.real()) > std::exp(1.0)) {
        ratios.push_back(std::max(0.0, std::log(std::abs(w.imag()))) / std::log(std::abs(w.real())));
      }
      w = evaluate(p, w);
    }
    REQUIRE(ratios.size() >= 2);
    for (std::size_t i = 1; i < ratios.size(); ++i) CHECK(ratios[i] < ratios[i - 1]);
  }
}

TEST_CASE("landing points") {
  for (int k : {1, 2}) {
    const auto p = sinh_family_params(k);
    for (const char* lit : {"(0R)*", "(0L)*"}) {
      const LandingResult lr = landing_point(p, addr(lit));
      CHECK(lr.converged);
      CHECK(std::abs(lr.z) < 1e-8);
    }
  }
  const auto p = sinh_family_params(1);
  const LandingResult pre = landing_point(p, addr("1R (0R)*"));
  CHECK(pre.converged);
  CHECK(std::abs(evaluate(p, pre.z)) < 1e-6);
  CHECK(std::abs(pre.z.imag() - kTwoPi) < 1.0);

  // The horizontal ray at the critical value lands there.
  const LandingResult cv = landing_point(p, addr("1R (0L)*"));
  CHECK(std::abs(cv.z - p.v) < 1e-8);

  CHECK_THROWS_AS(landing_point(p, ExternalAddress({}, GrowthTail{3.0, Side::R})), Error);
}

}  // TEST_SUITE
