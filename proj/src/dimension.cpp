#include "cosrays/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cosrays/errors.hpp"
#include "cosrays/parallel.hpp"

namespace cosrays {

BoxCountReport box_count(const std::vector<cplx>& points, const Window& window, std::size_t n_scales) {
  if (!window.valid()) throw Error(ErrorCode::InvalidArgument, "degenerate window");
  if (n_scales < 4) throw Error(ErrorCode::InvalidArgument, "need at least 4 scales");
  if (n_scales > 30) throw Error(ErrorCode::InvalidArgument, "at most 30 scales");

  std::vector<cplx> inside;
  inside.reserve(points.size());
  for (cplx z : points) {
    if (window.contains(z)) inside.push_back(z);
  }
  if (inside.size() < 1000) throw Error(ErrorCode::TooFewPoints, "need at least 1000 points inside the window");

  BoxCountReport r;
  r.window = window;
  r.points = inside.size();
  const double side = std::max(window.width(), window.height());
  std::vector<std::uint64_t> keys(inside.size());
  for (std::size_t j = 2; j <= n_scales + 1; ++j) {
    const double eps = side / std::ldexp(1.0, static_cast<int>(j));
    const std::uint64_t cells = std::uint64_t{1} << j;
    for (std::size_t i = 0; i < inside.size(); ++i) {
      auto cell = [&](double v, double lo) {
        const auto c = static_cast<std::uint64_t>(std::floor((v - lo) / eps));
        return std::min(c, cells - 1);
      };
      keys[i] = (cell(inside[i].real(), window.lo.real()) << 32) | cell(inside[i].imag(), window.lo.imag());
    }
    std::sort(keys.begin(), keys.end());
    r.scales.push_back(eps);
    r.counts.push_back(static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin()));
  }

  // Least squares of log N against log(1/eps), without the end scales.
  std::vector<double> xs, ys;
  for (std::size_t i = 1; i + 1 < r.scales.size(); ++i) {
    xs.push_back(-std::log(r.scales[i]));
    ys.push_back(std::log(static_cast<double>(r.counts[i])));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  r.slope = sxy / sxx;
  r.fit_quality = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return r;
}

namespace {

std::vector<ExternalAddress> primitive_periodic_addresses(std::int64_t bound, std::size_t depth) {
  std::vector<SymbolEntry> alphabet;
  for (Side side : {Side::R, Side::L}) {
    for (std::int64_t j = -bound; j <= bound; ++j) alphabet.push_back({j, side});
  }
  std::vector<ExternalAddress> out;
  for (std::size_t len = 1; len <= depth; ++len) {
    std::vector<std::size_t> digits(len, 0);
    while (true) {
      std::vector<SymbolEntry> block;
      for (std::size_t d : digits) block.push_back(alphabet[d]);
      const auto s = ExternalAddress::periodic({}, block);
      if (std::get<PeriodicTail>(s.canonical().tail()).block.size() == len) out.push_back(s);
      std::size_t i = 0;
      while (i < len && ++digits[i] == alphabet.size()) digits[i++] = 0;
      if (i == len) break;
    }
  }
  return out;
}

}  // namespace

RayFamilyReport ray_family_dimension(const MapParams& p, std::int64_t bound, std::size_t tail_depth, double t_floor,
                                     const Window& window, const TraceConfig& cfg, std::size_t n_scales) {
  if (!(t_floor > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_floor must be positive");
  if (bound < 0 || tail_depth == 0) throw Error(ErrorCode::InvalidArgument, "empty address family");
  if (!window.valid()) throw Error(ErrorCode::InvalidArgument, "degenerate window");

  const auto family = primitive_periodic_addresses(bound, tail_depth);
  const double reach = std::max(std::abs(window.lo.real()), std::abs(window.hi.real()));
  const double t_max =
      std::max(t_floor + 1.0, reach + std::abs(p.alpha.real()) + std::abs(p.beta.real()) + 2.0);
  const double finest = std::max(window.width(), window.height()) / std::ldexp(1.0, static_cast<int>(n_scales + 1));

  std::vector<std::vector<cplx>> per_ray(family.size());
  std::vector<char> failed(family.size(), 0);
  parallel_for(family.size(), [&](std::size_t i) {
    try {
      const RayPath path = trace_ray(p, family[i], t_floor, t_max, 256, cfg, finest / 2.0);
      for (const auto& s : path.samples) per_ray[i].push_back(s.z);
    } catch (const Error&) {
      failed[i] = 1;
    }
  });

  RayFamilyReport out;
  out.rays = family.size();
  std::vector<cplx> pts;
  for (std::size_t i = 0; i < family.size(); ++i) {
    out.skipped += failed[i];
    pts.insert(pts.end(), per_ray[i].begin(), per_ray[i].end());
  }
  out.box = box_count(pts, window, n_scales);
  return out;
}

std::vector<cplx> sample_window(const Window& window, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<cplx> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = window.lo.real() + unit() * window.width();
    const double y = window.lo.imag() + unit() * window.height();
    out.emplace_back(x, y);
  }
  return out;
}

EscapeStats escape_fraction(const MapParams& p, const std::vector<cplx>& samples, std::size_t budget) {
  if (samples.size() < 1000) throw Error(ErrorCode::InvalidArgument, "need at least 1000 samples");
  std::vector<char> esc(samples.size(), 0);
  parallel_for(samples.size(), [&](std::size_t i) { esc[i] = escape_time(p, samples[i], budget).escaped; });
  EscapeStats s;
  s.n_samples = samples.size();
  s.budget = budget;
  s.escape_radius_log = std::log(kEscapeRadius);
  for (char e : esc) s.escaped += static_cast<std::size_t>(e);
  s.fraction = static_cast<double>(s.escaped) / static_cast<double>(s.n_samples);
  return s;
}

EscapeStats escape_fraction(const MapParams& p, const Window& window, std::size_t n_samples, std::size_t budget,
                            std::uint64_t seed) {
  if (!window.valid()) throw Error(ErrorCode::InvalidArgument, "degenerate window");
  if (n_samples < 1000) throw Error(ErrorCode::InvalidArgument, "need at least 1000 samples");
  return escape_fraction(p, sample_window(window, n_samples, seed), budget);
}

EscapingSetReport escaping_set_dimension(const MapParams& p, const Window& window, std::size_t resolution,
                                         std::size_t budget, std::size_t n_scales) {
  if (!window.valid()) throw Error(ErrorCode::InvalidArgument, "degenerate window");
  if (resolution == 0) throw Error(ErrorCode::InvalidArgument, "resolution must be positive");
  const double dx = window.width() / static_cast<double>(resolution);
  const double dy = window.height() / static_cast<double>(resolution);
  std::vector<char> esc(resolution * resolution, 0);
  parallel_for(resolution, [&](std::size_t row) {
    const double y = window.lo.imag() + (static_cast<double>(row) + 0.5) * dy;
    for (std::size_t col = 0; col < resolution; ++col) {
      const double x = window.lo.real() + (static_cast<double>(col) + 0.5) * dx;
      esc[row * resolution + col] = escape_time(p, {x, y}, budget).escaped;
    }
  });

  EscapingSetReport out;
  std::vector<cplx> pts;
  for (std::size_t row = 0; row < resolution; ++row) {
    for (std::size_t col = 0; col < resolution; ++col) {
      if (!esc[row * resolution + col]) continue;
      pts.emplace_back(window.lo.real() + (static_cast<double>(col) + 0.5) * dx,
                       window.lo.imag() + (static_cast<double>(row) + 0.5) * dy);
    }
  }
  out.escaped = pts.size();
  out.fraction = static_cast<double>(pts.size()) / static_cast<double>(resolution * resolution);
  out.box = box_count(pts, window, n_scales);
  return out;
}

}  // namespace cosrays
