#include "cosrays/escape.hpp"

#include <cmath>

namespace cosrays {

namespace {

// Whether E(z) would have |Re| >= 4 |Re z|, for z too far out to evaluate.
bool predicted_quadrupling(const MapParams& p, cplx z) {
  if (!(std::abs(z.imag()) < 1e15)) return false;
  const double x = std::abs(z.real());
  const double phase = z.real() > 0.0 ? z.imag() + std::arg(p.a) : std::arg(p.b) - z.imag();
  const double mag = z.real() > 0.0 ? std::abs(p.a) : std::abs(p.b);
  const double c = std::abs(std::cos(phase));
  if (c == 0.0) return false;
  return x + std::log(mag) + std::log(c) >= std::log(4.0 * x);
}

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

template <class Record>
EscapeResult run(const MapParams& p, cplx z, std::size_t budget, Record record) {
  EscapeResult out;
  int quadruplings = 0;
  record(z);
  for (std::size_t k = 0;; ++k) {
    const double x = std::abs(z.real());
    out.steps = k;
    out.re_sign = sign_of(z.real());
    if (!std::isfinite(x)) {
      out.escaped = quadruplings >= 2;
      return out;
    }
    if (x > kMaxRealPart) {
      out.escaped = quadruplings >= 2 || predicted_quadrupling(p, z);
      return out;
    }
    if (x > kEscapeRadius && quadruplings >= 3) {
      out.escaped = true;
      return out;
    }
    if (k == budget) return out;
    const cplx w = evaluate(p, z);
    quadruplings = std::abs(w.real()) >= 4.0 * x ? quadruplings + 1 : 0;
    z = w;
    record(z);
  }
}

}  // namespace

EscapeResult escape_time(const MapParams& p, cplx z, std::size_t budget) {
  return run(p, z, budget, [](cplx) {});
}

EscapeResult escape_orbit(const MapParams& p, cplx z, std::size_t budget, std::vector<cplx>& orbit) {
  orbit.clear();
  return run(p, z, budget, [&](cplx w) { orbit.push_back(w); });
}

}  // namespace cosrays
