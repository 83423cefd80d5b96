#include "cosrays/ray_tracer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cosrays/errors.hpp"

namespace cosrays {

void TraceConfig::validate() const {
  if (!(tol > 0.0 && tol < 1.0)) throw Error(ErrorCode::InvalidArgument, "tol must lie in (0, 1)");
  if (!(T_cap > 0.0 && T_cap <= kMaxRealPart)) throw Error(ErrorCode::InvalidArgument, "T_cap must lie in (0, 700]");
  if (max_depth == 0) throw Error(ErrorCode::InvalidArgument, "max_depth must be positive");
  if (!(land_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "land_tol must be positive");
}

namespace {

double entry_value(const ExternalAddress& s, std::size_t k) {
  const double lm = s.log_magnitude(k);
  if (lm < 40.0) return static_cast<double>(s.entry(k).index);
  // Only growth tails get here; their indices are non-negative.
  return std::exp(lm);
}

double target_im(const MapParams& p, const ExternalAddress& s, std::size_t k) {
  return strip_center_im(p, entry_value(s, k), s.side(k), s.side(k + 1));
}

cplx snap_to_critical_point(const MapParams& p, cplx w, double target) {
  const auto cps = critical_points(p, target - kPi, target + kPi);
  cplx best{};
  double best_val = std::numeric_limits<double>::infinity();
  double best_dist = std::numeric_limits<double>::infinity();
  for (cplx c : cps) {
    const double val = std::abs(evaluate(p, c) - w);
    const double dist = std::abs(c.imag() - target);
    if (val < best_val - 1e-9 || (std::abs(val - best_val) <= 1e-9 && dist < best_dist)) {
      best = c;
      best_val = val;
      best_dist = dist;
    }
  }
  return best;
}

struct Chain {
  cplx z0;
  cplx z1;  // image-side neighbour of z0 (equals z0 when depth is 0)
};

// Pulls z (a point for sigma^depth(s)) back to a point for s.
Chain pull_back(const MapParams& p, const ExternalAddress& s, cplx z, std::size_t depth, bool snap) {
  cplx prev = z;
  for (std::size_t k = depth; k >= 1; --k) {
    prev = z;
    const double target = target_im(p, s, k);
    if (!snap) {
      z = inverse_branch_unchecked(p, z, s.side(k), target);
      continue;
    }
    try {
      z = inverse_branch_unchecked(p, z, s.side(k), target);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CriticalValueHit) throw;
      z = snap_to_critical_point(p, z, target);
    }
  }
  return {z, prev};
}

}  // namespace

double strip_center_im(const MapParams& p, double index, Side side, Side next_side) {
  const double shift = next_side == Side::L ? kPi : 0.0;
  if (side == Side::R) return kTwoPi * index - p.alpha.imag() - shift;
  return kTwoPi * index + p.beta.imag() - shift;
}

std::int64_t strip_index(const MapParams& p, double im, Side side, Side next_side) {
  const double shift = next_side == Side::L ? kPi : 0.0;
  const double raw = side == Side::R ? (im + p.alpha.imag() + shift) / kTwoPi : (im - p.beta.imag() + shift) / kTwoPi;
  return std::llround(raw);
}

cplx asymptotic_point(const MapParams& p, const ExternalAddress& s, double T) {
  const double im = target_im(p, s, 1);
  if (s.side(1) == Side::R) return {T - p.alpha.real(), im};
  return {-T + p.beta.real(), im};
}

TracedPoint trace_point(const MapParams& p, const ExternalAddress& s, double t, const TraceConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "potential must be finite");
  const double ts = s.is_bounded() ? 0.0 : minimal_potential(s).t;
  if (!(t > ts + 1e-6)) {
    Error e(ErrorCode::InvalidArgument, "potential must exceed the minimal potential");
    e.potential = t;
    throw e;
  }

  // Seed depth: F^{N-1}(t) <= T_cap < F^N(t), capped by max_depth.
  std::vector<double> pot{t};
  while (pot.size() - 1 < cfg.max_depth && pot.back() <= cfg.T_cap) pot.push_back(growth(pot.back()));
  const std::size_t depth = pot.size() - 1;
  if (pot.back() < cfg.T_min) {
    Error e(ErrorCode::DepthExhausted, "potential too small for direct seeding");
    e.potential = t;
    throw e;
  }

  const ExternalAddress tail = s.shift(depth);
  for (int attempt = 0; attempt < 4; ++attempt) {
    const double seed_t = pot.back() * std::pow(1.01, attempt);
    try {
      const Chain c = pull_back(p, s, asymptotic_point(p, tail, seed_t), depth, false);
      TracedPoint out{c.z0, depth, 0.0};
      if (depth > 0) out.residual = std::abs(evaluate(p, c.z0) - c.z1) / (1.0 + std::abs(c.z1));
      return out;
    } catch (Error& e) {
      if (e.code() != ErrorCode::CriticalValueHit) {
        if (!e.potential) e.potential = t;
        throw;
      }
    }
  }
  Error e(ErrorCode::PullbackHitCriticalValue, "pullback passes through a critical value");
  e.potential = t;
  throw e;
}

RayPath trace_ray(const MapParams& p, const ExternalAddress& s, double t_min, double t_max, std::size_t n_samples,
                  const TraceConfig& cfg, double max_step) {
  RayPath path{s, {}, cfg};
  auto sample = [&](double t) {
    const TracedPoint tp = trace_point(p, s, t, cfg);
    return RaySample{t, tp.z, tp.residual};
  };
  if (t_min == t_max) {
    path.samples.push_back(sample(t_min));
    return path;
  }
  if (!(t_max > t_min) || !(t_min > 0.0)) throw Error(ErrorCode::InvalidArgument, "need 0 < t_min < t_max");
  if (n_samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  if (!(max_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "max_step must be positive");

  std::vector<RaySample> samples;
  samples.reserve(n_samples);
  const double ratio = t_min / t_max;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t = i + 1 == n_samples ? t_min
                                        : t_max * std::pow(ratio, static_cast<double>(i) / (n_samples - 1));
    samples.push_back(sample(t));
  }

  const std::size_t cap = 8 * n_samples;
  bool inserted = true;
  while (inserted && samples.size() < cap) {
    inserted = false;
    std::vector<RaySample> next;
    next.reserve(std::min(cap, 2 * samples.size()));
    for (std::size_t i = 0; i < samples.size(); ++i) {
      next.push_back(samples[i]);
      if (i + 1 == samples.size()) break;
      const auto& lo = samples[i + 1];
      if (std::abs(samples[i].z - lo.z) > max_step && next.size() + (samples.size() - i - 1) < cap) {
        const double mid = std::sqrt(samples[i].t * lo.t);
        if (mid < samples[i].t && mid > lo.t) {
          next.push_back(sample(mid));
          inserted = true;
        }
      }
    }
    samples = std::move(next);
  }
  path.samples = std::move(samples);
  return path;
}

double verify_functional_equation(const MapParams& p, const ExternalAddress& s, double t, const TraceConfig& cfg) {
  const double ft = growth(t);
  if (!std::isfinite(ft)) throw Error(ErrorCode::InvalidArgument, "F(t) is not finite");
  const cplx z = trace_point(p, s, t, cfg).z;
  const cplx w = trace_point(p, s.shift(), ft, cfg).z;
  return std::abs(evaluate(p, z) - w);
}

double seed_defect(const MapParams& p, const ExternalAddress& s, double t) {
  const cplx direct = asymptotic_point(p, s, t);
  const cplx image = asymptotic_point(p, s.shift(), growth(t));
  const cplx pulled = inverse_branch(p, image, s.side(1), target_im(p, s, 1));
  return std::abs(direct - pulled);
}

LandingResult landing_point(const MapParams& p, const ExternalAddress& s, const TraceConfig& cfg) {
  cfg.validate();
  if (!s.is_bounded()) throw Error(ErrorCode::InvalidArgument, "landing needs a bounded address");

  LandingResult out;
  ExternalAddress tail = s;
  bool have_prev = false;
  for (std::size_t depth = 1; depth <= cfg.max_depth; ++depth) {
    tail = tail.shift();
    const cplx z = pull_back(p, s, asymptotic_point(p, tail, cfg.T_cap), depth, true).z0;
    if (have_prev) {
      out.gap = std::abs(z - out.z);
      out.z = z;
      out.depth = depth;
      if (out.gap < cfg.land_tol) {
        out.converged = true;
        return out;
      }
    } else {
      out.z = z;
      out.depth = depth;
      have_prev = true;
    }
  }
  return out;
}

}  // namespace cosrays
