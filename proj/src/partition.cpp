#include "cosrays/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cosrays/errors.hpp"

namespace cosrays {

namespace {

constexpr double kBoundaryTol = 1e-9;

Side sign_side(double x) { return x > 0.0 ? Side::R : Side::L; }

bool is_sinh_family(const MapParams& p) {
  const double scale = std::abs(p.a);
  return std::abs(p.a.imag()) <= 1e-12 * scale && std::abs(p.a + p.b) <= 1e-12 * scale;
}

struct CurveBuilder {
  const MapParams& p;
  const ExternalAddress& base;
  const PartitionConfig& cfg;
  cplx crit;
  Side side;
  std::vector<cplx> pts;

  std::optional<cplx> preimage(double t, double target) const {
    cplx w;
    try {
      w = trace_point(p, base, t, cfg.trace).z;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DepthExhausted || e.code() == ErrorCode::PullbackHitCriticalValue) return std::nullopt;
      throw;
    }
    try {
      return inverse_branch_unchecked(p, w, side, target);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::CriticalValueHit) return std::nullopt;
      throw;
    }
  }

  bool beyond(const cplx& z, double margin) const {
    return side == Side::R ? z.real() > cfg.half_width + margin : z.real() < -cfg.half_width - margin;
  }

  void push(cplx z) {
    const cplx last = pts.back();
    const bool forward = side == Side::R ? z.real() > last.real() : z.real() < last.real();
    if (forward) {
      pts.push_back(z);
      return;
    }
    if (std::abs(z - crit) < 1e-6 && pts.size() == 1) return;
    throw Error(ErrorCode::PartitionGeometry, "preimage curve is not a graph over the real axis");
  }

  void refine(double ta, cplx za, double tb, cplx zb, int depth) {
    if (std::abs(zb - za) <= cfg.max_segment || depth > 40) return;
    const double tm = std::sqrt(ta * tb);
    const auto zm = preimage(tm, za.imag());
    if (!zm) return;
    refine(ta, za, tm, *zm, depth + 1);
    push(*zm);
    refine(tm, *zm, tb, zb, depth + 1);
  }

  void run() {
    pts = {crit};
    const double t_hi =
        std::exp(cfg.half_width + std::abs(std::log(std::abs(p.a))) + std::abs(std::log(std::abs(p.b))) + 3.0);
    const double t_lo = 0.05;
    const int n = 400;
    double last_t = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (n - 1));
      const auto z = preimage(t, pts.back().imag());
      if (!z) continue;
      if (last_t > 0.0) refine(last_t, pts.back(), t, *z, 0);
      const std::size_t before = pts.size();
      push(*z);
      if (pts.size() > before) last_t = t;
      if (beyond(pts.back(), 1.0)) return;
    }
    throw Error(ErrorCode::PartitionGeometry, "preimage curve does not leave the window");
  }
};

double nearest_branch(double value, double near) {
  return value + kTwoPi * std::round((near - value) / kTwoPi);
}

}  // namespace

double BoundaryCurve::height_at(double re) const {
  if (side == Side::R) {
    if (re >= x.back()) return tail_im;
    if (re <= x.front()) return y.front();
  } else {
    if (re <= x.front()) return tail_im;
    if (re >= x.back()) return y.back();
  }
  const auto it = std::upper_bound(x.begin(), x.end(), re);
  const std::size_t i = static_cast<std::size_t>(it - x.begin());
  const double x0 = x[i - 1], x1 = x[i];
  const double w = (re - x0) / (x1 - x0);
  return y[i - 1] + w * (y[i] - y[i - 1]);
}

const BoundaryCurve& PartitionModel::curve(std::size_t critical_index, Side side) const {
  for (const auto& c : curves) {
    if (c.critical_index == critical_index && c.side == side) return c;
  }
  throw Error(ErrorCode::PartitionGeometry, "partition is missing a boundary curve");
}

ExternalAddress real_axis_address(const MapParams& p, Side side) {
  auto image_side = [&](Side s) { return sign_side(evaluate(p, s == Side::R ? 1.0 : -1.0).real()); };
  const Side next = image_side(side);
  if (next == side) return ExternalAddress::constant({strip_index(p, 0.0, side, side), side});
  return ExternalAddress::periodic(
      {}, {{strip_index(p, 0.0, side, next), side}, {strip_index(p, 0.0, next, side), next}});
}

std::pair<ExternalAddress, ExternalAddress> default_base_addresses(const MapParams& p, RayPolicy policy) {
  if (!is_sinh_family(p)) {
    throw Error(ErrorCode::InvalidArgument, "no default base rays for these parameters; supply addresses");
  }
  const Side dir = policy == RayPolicy::Right ? Side::R : Side::L;
  auto horizontal = [&](cplx cv) {
    const cplx probe = cv + (dir == Side::R ? 1.0 : -1.0);
    const Side image = sign_side(evaluate(p, probe).real());
    return real_axis_address(p, image).prepend({strip_index(p, cv.imag(), dir, image), dir});
  };
  return {horizontal(p.v), horizontal(p.v_prime)};
}

PartitionModel build_partition(const MapParams& p, const PartitionConfig& cfg) {
  PartitionModel part;
  part.params = p;
  part.policy = cfg.policy;
  part.half_width = cfg.half_width;
  if (cfg.base_v && cfg.base_vprime) {
    part.base_v = *cfg.base_v;
    part.base_vprime = *cfg.base_vprime;
  } else {
    auto [bv, bvp] = default_base_addresses(p, cfg.policy);
    part.base_v = cfg.base_v.value_or(bv);
    part.base_vprime = cfg.base_vprime.value_or(bvp);
  }

  for (const auto* base : {&part.base_v, &part.base_vprime}) {
    const cplx target = base == &part.base_v ? p.v : p.v_prime;
    const LandingResult lr = landing_point(p, *base, cfg.trace);
    if (std::abs(lr.z - target) > 1e-6) {
      throw Error(ErrorCode::RayDoesNotLandAtCriticalValue,
                  "base ray " + to_literal(*base) + " does not land at its critical value");
    }
  }

  part.c0 = 0.5 * std::log(p.b / p.a);
  const double theta_v = part.base_v.side(1) == Side::R ? 0.0 : kPi;
  const double theta_vp = part.base_vprime.side(1) == Side::R ? 0.0 : kPi;

  for (Side side : {Side::R, Side::L}) {
    for (std::size_t j = 0; j < 2; ++j) {
      const cplx crit = part.c0 + cplx(0.0, kPi * static_cast<double>(j));
      const cplx cv = evaluate(p, crit);
      const bool to_v = std::abs(cv - p.v) <= std::abs(cv - p.v_prime);
      const ExternalAddress& base = to_v ? part.base_v : part.base_vprime;
      const double theta = to_v ? theta_v : theta_vp;

      CurveBuilder builder{p, base, cfg, crit, side, {}};
      builder.run();

      BoundaryCurve curve;
      curve.critical_index = j;
      curve.side = side;
      curve.critical_point = crit;
      for (cplx z : builder.pts) {
        curve.x.push_back(z.real());
        curve.y.push_back(z.imag());
      }
      if (side == Side::L) {
        std::reverse(curve.x.begin(), curve.x.end());
        std::reverse(curve.y.begin(), curve.y.end());
        curve.tail_im = nearest_branch(std::arg(p.b) - theta, curve.y.front());
      } else {
        curve.tail_im = nearest_branch(theta - std::arg(p.a), curve.y.back());
      }
      part.curves.push_back(std::move(curve));
    }
  }

  const cplx ref = cfg.reference_point ? *cfg.reference_point : compute_postsingular(p).cycles.front().front();
  part.label_origin = HalfInteger{0};
  const Location raw = locate(part, ref);
  if (raw.boundary_distance < kBoundaryTol) {
    throw Error(ErrorCode::PartitionGeometry, "reference point lies on the partition boundary");
  }
  part.label_origin = HalfInteger{-raw.label.twice};
  for (auto& c : part.curves) {
    const std::int64_t base_twice = part.label_origin.twice + (c.critical_index == 0 ? 0 : 1);
    c.below = HalfInteger{base_twice};
    c.above = HalfInteger{base_twice + 1};
  }

  // Height: component A spans (y1 - 2 pi, y0), component B spans (y0, y1).
  double a_lo = std::numeric_limits<double>::infinity(), a_hi = -a_lo;
  double b_lo = a_lo, b_hi = -a_lo;
  for (Side side : {Side::R, Side::L}) {
    const auto& k0 = part.curve(0, side);
    const auto& k1 = part.curve(1, side);
    std::vector<double> xs = k0.x;
    xs.insert(xs.end(), k1.x.begin(), k1.x.end());
    xs.push_back(side == Side::R ? 1e9 : -1e9);
    for (double x : xs) {
      const double y0 = k0.height_at(x), y1 = k1.height_at(x);
      a_lo = std::min(a_lo, y1 - kTwoPi);
      a_hi = std::max(a_hi, y0);
      b_lo = std::min(b_lo, y0);
      b_hi = std::max(b_hi, y1);
    }
  }
  part.height_bound = std::max(a_hi - a_lo, b_hi - b_lo);
  return part;
}

Location locate(const PartitionModel& part, cplx z) {
  const Side side = z.real() >= part.c0.real() ? Side::R : Side::L;
  const double y0 = part.curve(0, side).height_at(z.real());
  const double y1 = part.curve(1, side).height_at(z.real());
  const double gap = y1 - y0;
  const double d = z.imag() - y0;
  const double n = std::floor(d / kTwoPi);
  const double r = d - kTwoPi * n;
  const auto ni = static_cast<std::int64_t>(n);

  Location loc;
  loc.label = r < gap ? HalfInteger{part.label_origin.twice + 2 * ni + 1} : HalfInteger{part.label_origin.twice + 2 * ni + 2};
  loc.boundary_distance = std::min({r, std::abs(gap - r), kTwoPi - r});

  const double m = std::round((z.imag() - part.c0.imag()) / kPi);
  const cplx crit = part.c0 + cplx(0.0, kPi * m);
  loc.boundary_distance = std::min(loc.boundary_distance, std::abs(z - crit));
  return loc;
}

HalfInteger itinerary_entry(const PartitionModel& part, cplx z) {
  const Location loc = locate(part, z);
  if (loc.boundary_distance < kBoundaryTol) throw Error(ErrorCode::OnBoundary, "point lies on the partition boundary");
  return loc.label;
}

Itinerary itinerary_of_point(const PartitionModel& part, cplx z, std::size_t length) {
  Itinerary out;
  cplx w = z;
  for (std::size_t k = 0; k < length; ++k) {
    if (!(std::abs(w.real()) <= kMaxRealPart) || !std::isfinite(w.imag())) {
      out.escaped_beyond_range = true;
      break;
    }
    try {
      out.entries.push_back(itinerary_entry(part, w));
    } catch (Error& e) {
      e.step = k + 1;
      throw;
    }
    if (k + 1 < length) w = evaluate(part.params, w);
  }
  return out;
}

bool is_boundary_address(const PartitionModel& part, const ExternalAddress& s, std::size_t horizon) {
  ExternalAddress cur = s;
  for (std::size_t j = 0; j <= horizon; ++j) {
    if (cur.same_sequence(part.base_v) || cur.same_sequence(part.base_vprime)) return true;
    cur = cur.shift();
  }
  return false;
}

Itinerary itinerary_of_address(const PartitionModel& part, const ExternalAddress& s, std::size_t length,
                               const TraceConfig& cfg) {
  std::size_t horizon = length;
  if (const auto* tail = std::get_if<PeriodicTail>(&s.tail())) horizon = s.prefix().size() + tail->block.size() + 1;
  if (is_boundary_address(part, s, horizon)) {
    throw Error(ErrorCode::BoundaryRay, to_literal(s) + " is a partition boundary ray");
  }

  Itinerary out;
  ExternalAddress cur = s;
  for (std::size_t k = 1; k <= length; ++k) {
    bool found = false;
    for (double t : {2.0, 3.0, 1.5, 4.0, 6.0}) {
      const Location loc = locate(part, trace_point(part.params, cur, t, cfg).z);
      if (loc.boundary_distance >= kBoundaryTol) {
        out.entries.push_back(loc.label);
        found = true;
        break;
      }
    }
    if (!found) {
      Error e(ErrorCode::OnBoundary, "ray tail runs along the partition boundary");
      e.step = k;
      throw e;
    }
    cur = cur.shift();
  }
  return out;
}

}  // namespace cosrays
