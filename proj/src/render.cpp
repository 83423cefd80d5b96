#include "cosrays/render.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "cosrays/errors.hpp"
#include "cosrays/palette.hpp"
#include "cosrays/parallel.hpp"
#include "cosrays/ray_tracer.hpp"

namespace cosrays {

namespace {

using Rgb = std::array<std::uint8_t, 3>;

constexpr Rgb kRayColor{255, 255, 255};
constexpr Rgb kCurveColor{255, 230, 0};
constexpr Rgb kBaseColor{0, 230, 255};
constexpr Rgb kPostColor{0, 255, 64};

struct Canvas {
  Image& img;
  const Window& w;
  double dx, dy;

  // Continuous pixel coordinates (column, row) of z.
  std::pair<double, double> to_pixel(cplx z) const {
    return {(z.real() - w.lo.real()) / dx, (w.hi.imag() - z.imag()) / dy};
  }

  void line(cplx a, cplx b, Rgb c) {
    auto [x0f, y0f] = to_pixel(a);
    auto [x1f, y1f] = to_pixel(b);
    const double lim = 4.0 * static_cast<double>(img.width + img.height);
    if (std::abs(x0f) > lim || std::abs(y0f) > lim || std::abs(x1f) > lim || std::abs(y1f) > lim) return;
    auto x0 = static_cast<std::ptrdiff_t>(std::floor(x0f)), y0 = static_cast<std::ptrdiff_t>(std::floor(y0f));
    const auto x1 = static_cast<std::ptrdiff_t>(std::floor(x1f)), y1 = static_cast<std::ptrdiff_t>(std::floor(y1f));
    const std::ptrdiff_t sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    const std::ptrdiff_t ddx = std::abs(x1 - x0), ddy = -std::abs(y1 - y0);
    std::ptrdiff_t err = ddx + ddy;
    while (true) {
      img.set(x0, y0, c);
      if (x0 == x1 && y0 == y1) break;
      const std::ptrdiff_t e2 = 2 * err;
      if (e2 >= ddy) {
        err += ddy;
        x0 += sx;
      }
      if (e2 <= ddx) {
        err += ddx;
        y0 += sy;
      }
    }
  }

  void polyline(const std::vector<cplx>& pts, Rgb c) {
    for (std::size_t i = 1; i < pts.size(); ++i) line(pts[i - 1], pts[i], c);
  }
};

double far_potential(const MapParams& p, const Window& w) {
  const double reach = std::max(std::abs(w.lo.real()), std::abs(w.hi.real()));
  return reach + std::abs(p.alpha.real()) + std::abs(p.beta.real()) + 2.0;
}

std::vector<cplx> ray_points(const MapParams& p, const ExternalAddress& s, const Window& w, double step) {
  const double ts = s.is_bounded() ? 0.0 : minimal_potential(s).t;
  const RayPath path = trace_ray(p, s, ts + 0.05, std::max(ts + 1.0, far_potential(p, w)), 256, {}, step);
  std::vector<cplx> out;
  for (const auto& smp : path.samples) out.push_back(smp.z);
  return out;
}

void draw_partition(Canvas& cv, const RenderJob& job) {
  const PartitionModel part = build_partition(job.params, job.partition);
  const double edge_r = std::max(job.window.hi.real(), part.half_width) + 1.0;
  const double edge_l = std::min(job.window.lo.real(), -part.half_width) - 1.0;
  for (const auto& c : part.curves) {
    std::vector<cplx> base;
    if (c.side == Side::L) base.emplace_back(edge_l, c.tail_im);
    for (std::size_t i = 0; i < c.x.size(); ++i) base.emplace_back(c.x[i], c.y[i]);
    if (c.side == Side::R) base.emplace_back(edge_r, c.tail_im);
    double lo = 1e300, hi = -1e300;
    for (cplx z : base) {
      lo = std::min(lo, z.imag());
      hi = std::max(hi, z.imag());
    }
    const auto n0 = static_cast<long long>(std::floor((job.window.lo.imag() - hi) / kTwoPi));
    const auto n1 = static_cast<long long>(std::ceil((job.window.hi.imag() - lo) / kTwoPi));
    for (long long n = n0; n <= n1; ++n) {
      std::vector<cplx> shifted;
      for (cplx z : base) shifted.push_back(z + cplx(0.0, kTwoPi * static_cast<double>(n)));
      cv.polyline(shifted, kCurveColor);
    }
  }
  for (const auto* s : {&part.base_v, &part.base_vprime}) cv.polyline(ray_points(job.params, *s, job.window, cv.dx), kBaseColor);
}

}  // namespace

void RenderJob::validate() const {
  if (width < 16 || width > 16384 || height < 16 || height > 16384) {
    throw Error(ErrorCode::InvalidArgument, "image size must lie in [16, 16384]");
  }
  if (!window.valid()) throw Error(ErrorCode::InvalidArgument, "degenerate window");
  if (palette != "default") throw Error(ErrorCode::InvalidArgument, "unknown palette " + palette);
  for (const auto& o : overlays) {
    if (o.kind == OverlayKind::Ray && !o.address) throw Error(ErrorCode::InvalidArgument, "ray overlay needs an address");
  }
}

void Image::set(std::ptrdiff_t col, std::ptrdiff_t row, std::array<std::uint8_t, 3> c) {
  if (col < 0 || row < 0 || static_cast<std::size_t>(col) >= width || static_cast<std::size_t>(row) >= height) return;
  const std::size_t at = 3 * (static_cast<std::size_t>(row) * width + static_cast<std::size_t>(col));
  rgb[at] = c[0];
  rgb[at + 1] = c[1];
  rgb[at + 2] = c[2];
}

std::uint8_t palette_index(const EscapeResult& r) {
  if (!r.escaped) return 0;
  const std::size_t fade = 6 * r.steps;
  return static_cast<std::uint8_t>(fade >= 254 ? 1 : 255 - fade);
}

Image render_escape(const RenderJob& job) {
  job.validate();
  Image img;
  img.width = job.width;
  img.height = job.height;
  img.rgb.assign(3 * job.width * job.height, 0);
  const double dx = job.window.width() / static_cast<double>(job.width);
  const double dy = job.window.height() / static_cast<double>(job.height);

  parallel_for(job.height, [&](std::size_t row) {
    const double y = job.window.hi.imag() - (static_cast<double>(row) + 0.5) * dy;
    for (std::size_t col = 0; col < job.width; ++col) {
      const double x = job.window.lo.real() + (static_cast<double>(col) + 0.5) * dx;
      const EscapeResult r = escape_time(job.params, {x, y}, job.budget);
      auto c = kEscapePalette[palette_index(r)];
      if (r.escaped && r.re_sign < 0) std::swap(c[0], c[2]);
      const std::size_t at = 3 * (row * job.width + col);
      img.rgb[at] = c[0];
      img.rgb[at + 1] = c[1];
      img.rgb[at + 2] = c[2];
    }
  });

  Canvas cv{img, job.window, dx, dy};
  for (const auto& o : job.overlays) {
    switch (o.kind) {
      case OverlayKind::Partition:
        draw_partition(cv, job);
        break;
      case OverlayKind::Ray:
        cv.polyline(ray_points(job.params, *o.address, job.window, dx), kRayColor);
        break;
      case OverlayKind::Postsingular:
        for (cplx z : compute_postsingular(job.params).points) {
          const auto [px, py] = cv.to_pixel(z);
          const auto col = static_cast<std::ptrdiff_t>(std::floor(px)), row = static_cast<std::ptrdiff_t>(std::floor(py));
          for (std::ptrdiff_t d = -3; d <= 3; ++d) {
            img.set(col + d, row, kPostColor);
            img.set(col, row + d, kPostColor);
          }
        }
        break;
    }
  }
  return img;
}

void write_ppm(const Image& img, std::ostream& out) {
  out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
}

void write_ppm(const Image& img, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_ppm(img, f);
  if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace cosrays
