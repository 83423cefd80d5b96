#include "cosrays/cosine_map.hpp"

#include <algorithm>
#include <cmath>

#include "cosrays/errors.hpp"

namespace cosrays {

MapParams MapParams::from_coefficients(cplx a, cplx b) {
  if (a == cplx{} || b == cplx{}) throw Error(ErrorCode::InvalidArgument, "coefficients must be nonzero");
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) ||
      !std::isfinite(b.imag())) {
    throw Error(ErrorCode::InvalidArgument, "coefficients must be finite");
  }
  MapParams p;
  p.a = a;
  p.b = b;
  p.alpha = std::log(a);
  p.beta = std::log(b);
  p.v = 2.0 * std::sqrt(a * b);
  p.v_prime = -p.v;
  return p;
}

double MapParams::critical_re() const { return 0.5 * (std::log(std::abs(b)) - std::log(std::abs(a))); }

namespace {

void check_range(cplx z) {
  if (!(std::abs(z.real()) <= kMaxRealPart)) {
    throw Error(ErrorCode::OverflowRange, "|Re z| exceeds 700");
  }
}

}  // namespace

cplx evaluate(const MapParams& p, cplx z) {
  check_range(z);
  return p.a * std::exp(z) + p.b * std::exp(-z);
}

cplx derivative(const MapParams& p, cplx z) {
  check_range(z);
  return p.a * std::exp(z) - p.b * std::exp(-z);
}

std::vector<cplx> critical_points(const MapParams& p, double im_lo, double im_hi) {
  if (!std::isfinite(im_lo) || !std::isfinite(im_hi)) {
    throw Error(ErrorCode::InvalidArgument, "imaginary range must be finite");
  }
  const cplx c0 = 0.5 * std::log(p.b / p.a);
  std::vector<cplx> out;
  const auto n_lo = static_cast<long long>(std::ceil((im_lo - c0.imag()) / kPi));
  const auto n_hi = static_cast<long long>(std::floor((im_hi - c0.imag()) / kPi));
  for (long long n = n_lo; n <= n_hi; ++n) out.push_back(c0 + cplx(0.0, kPi * static_cast<double>(n)));
  return out;
}

namespace {

cplx solve_preimage(const MapParams& p, cplx w, Side side, double target_im, bool strict) {
  const double w_abs = std::abs(w);
  if (!std::isfinite(w_abs)) throw Error(ErrorCode::OverflowRange, "non-finite preimage target");
  if (std::abs(w - p.v) * std::abs(w + p.v) < 1e-14 * (1.0 + w_abs * w_abs)) {
    throw Error(ErrorCode::CriticalValueHit, "target is a critical value");
  }
  // a u^2 - w u + b = 0 with u = e^z; the discriminant is scaled for large |w|.
  cplx disc;
  if (w_abs > 1.0) {
    disc = w * std::sqrt(1.0 - (4.0 * p.a * p.b / w) / w);
  } else {
    disc = std::sqrt(w * w - 4.0 * p.a * p.b);
  }
  const cplx plus = w + disc;
  const cplx minus = w - disc;
  const cplx big = (std::abs(plus) >= std::abs(minus) ? plus : minus) / (2.0 * p.a);
  const cplx small = p.b / (p.a * big);

  const double r = std::sqrt(std::abs(p.b / p.a));
  if (strict && std::abs(std::abs(big) - std::abs(small)) < 1e-12 * r) {
    throw Error(ErrorCode::AmbiguousSide, "both preimages lie on the critical line");
  }
  const cplx u = side == Side::R ? big : small;
  const double arg = std::arg(u);
  const double m = std::round((target_im - arg) / kTwoPi);
  return {std::log(std::abs(u)), arg + kTwoPi * m};
}

}  // namespace

cplx inverse_branch(const MapParams& p, cplx w, Side side, double target_im) {
  return solve_preimage(p, w, side, target_im, true);
}

cplx inverse_branch_unchecked(const MapParams& p, cplx w, Side side, double target_im) {
  return solve_preimage(p, w, side, target_im, false);
}

MapParams sinh_family_params(int k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be nonzero");
  const double h = k * kPi / 2.0;
  return MapParams::from_coefficients({h, 0.0}, {-h, 0.0});
}

cplx fixed_value_family_residual(cplx a, int k) {
  return a * (1.0 - std::sin(2.0 * a)) - kPi * static_cast<double>(k);
}

cplx default_fixed_value_seed(int k) {
  switch (k) {
    case 1: return {1.9, 0.0};
    case -1: return {-1.2, 0.56};
    case 2: return {2.56, -0.48};
    case -2: return {-2.56, 0.48};
    default: return {kPi * k / 2.0, 0.0};
  }
}

MapParams solve_fixed_value_family(int k, std::optional<cplx> seed) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be nonzero");
  cplx a = seed.value_or(default_fixed_value_seed(k));
  cplx f = fixed_value_family_residual(a, k);
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    const cplx df = 1.0 - std::sin(2.0 * a) - 2.0 * a * std::cos(2.0 * a);
    if (df == cplx{}) break;
    cplx step = f / df;
    double lambda = 1.0;
    cplx next = a - step;
    cplx f_next = fixed_value_family_residual(next, k);
    for (int damp = 0; damp < 30 && !(std::abs(f_next) < std::abs(f)); ++damp) {
      lambda *= 0.5;
      next = a - lambda * step;
      f_next = fixed_value_family_residual(next, k);
    }
    const double moved = std::abs(next - a);
    a = next;
    f = f_next;
    if (!std::isfinite(std::abs(a))) break;
    if (std::abs(f) < 1e-13 || moved < 1e-16 * (1.0 + std::abs(a))) {
      converged = std::abs(f) < 1e-12;
      break;
    }
  }
  if (!converged) throw Error(ErrorCode::NewtonDivergence, "no root within 200 iterations");

  const MapParams p = MapParams::from_coefficients(a, -a);
  for (const cplx c : {p.v, p.v_prime}) {
    const cplx fix = evaluate(p, c);
    if (std::abs(evaluate(p, fix) - fix) > 1e-10) {
      throw Error(ErrorCode::WrongBasin, "critical value does not land on a fixed point");
    }
    if (!(std::abs(derivative(p, fix)) > 1.0)) {
      throw Error(ErrorCode::WrongBasin, "fixed point is not repelling");
    }
  }
  return p;
}

bool PostsingularData::contains(cplx z, double tol) const {
  return std::any_of(points.begin(), points.end(), [&](cplx q) { return std::abs(q - z) < tol; });
}

namespace {

struct OrbitSummary {
  std::vector<cplx> preperiodic;
  std::vector<cplx> cycle;
  std::size_t preperiod = 0;
  std::size_t period = 0;
};

// Newton on E^p(z) - z.
cplx refine_cycle_point(const MapParams& p, cplx z, std::size_t period) {
  for (int it = 0; it < 50; ++it) {
    cplx w = z;
    cplx d = 1.0;
    for (std::size_t j = 0; j < period; ++j) {
      d *= derivative(p, w);
      w = evaluate(p, w);
    }
    const cplx g = w - z;
    const cplx dg = d - 1.0;
    if (dg == cplx{}) break;
    const cplx step = g / dg;
    z -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
  }
  return z;
}

OrbitSummary follow_orbit(const MapParams& p, cplx start, std::size_t max_pre, std::size_t max_period) {
  std::vector<cplx> orbit{start};
  for (std::size_t n = 1; n <= max_pre + max_period; ++n) {
    const cplx prev = orbit.back();
    if (std::abs(prev.real()) > kMaxRealPart) break;
    const cplx z = evaluate(p, prev);
    if (!(std::abs(z) < 1e12)) {
      throw Error(ErrorCode::NotPreperiodic, "critical orbit escapes");
    }
    for (std::size_t m = 0; m < n; ++m) {
      if (std::abs(z - orbit[m]) < 1e-9) {
        OrbitSummary s;
        s.preperiod = m;
        s.period = n - m;
        if (s.preperiod > max_pre || s.period > max_period) break;
        s.preperiodic.assign(orbit.begin(), orbit.begin() + static_cast<std::ptrdiff_t>(m));
        cplx c = refine_cycle_point(p, orbit[m], s.period);
        for (std::size_t j = 0; j < s.period; ++j) {
          s.cycle.push_back(c);
          c = evaluate(p, c);
        }
        return s;
      }
    }
    orbit.push_back(z);
  }
  throw Error(ErrorCode::NotPreperiodic, "no cycle detected within the search bounds");
}

}  // namespace

PostsingularData compute_postsingular(const MapParams& p, std::size_t max_pre, std::size_t max_period) {
  PostsingularData out;
  auto add_point = [&](cplx z) {
    if (!out.contains(z, 1e-9)) out.points.push_back(z);
  };
  auto add_cycle = [&](const std::vector<cplx>& cycle) {
    for (const auto& known : out.cycles) {
      for (cplx q : known) {
        if (std::abs(q - cycle.front()) < 1e-9) return;
      }
    }
    cplx mult = 1.0;
    for (cplx c : cycle) mult *= derivative(p, c);
    out.cycles.push_back(cycle);
    out.multipliers.push_back(mult);
  };

  const OrbitSummary sv = follow_orbit(p, p.v, max_pre, max_period);
  const OrbitSummary svp = follow_orbit(p, p.v_prime, max_pre, max_period);
  out.preperiod_v = sv.preperiod;
  out.period_v = sv.period;
  out.preperiod_vprime = svp.preperiod;
  out.period_vprime = svp.period;
  for (const OrbitSummary* s : {&sv, &svp}) {
    for (cplx z : s->preperiodic) add_point(z);
    for (cplx z : s->cycle) add_point(z);
    add_cycle(s->cycle);
  }
  return out;
}

}  // namespace cosrays
