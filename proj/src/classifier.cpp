#include "cosrays/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "cosrays/escape.hpp"

namespace cosrays {

std::string_view to_string(ClassKind kind) {
  switch (kind) {
    case ClassKind::OnRay: return "OnRay";
    case ClassKind::LandingPoint: return "LandingPoint";
    case ClassKind::PostsingularOrPreimage: return "PostsingularOrPreimage";
    case ClassKind::Undecided: return "Undecided";
  }
  return "Undecided";
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kUnreadable = 0.1;  // absolute error in Im that still pins a strip
constexpr double kLandingAgreement = 1e-6;
constexpr std::size_t kCoarseCap = 20000;

Side side_of(const MapParams& p, cplx z) { return z.real() > p.critical_re() ? Side::R : Side::L; }

// Forward error bound for each orbit point, assuming orbit[0] is exact up to
// rounding.
std::vector<double> error_bounds(const MapParams& p, const std::vector<cplx>& orbit) {
  std::vector<double> d(orbit.size(), std::numeric_limits<double>::infinity());
  d[0] = kEps * (1.0 + std::abs(orbit[0]));
  for (std::size_t k = 1; k < orbit.size(); ++k) {
    const cplx prev = orbit[k - 1];
    if (!(std::abs(prev.real()) <= kMaxRealPart) || !std::isfinite(d[k - 1])) break;
    d[k] = std::abs(derivative(p, prev)) * d[k - 1] + kEps * std::abs(orbit[k]);
  }
  return d;
}

}  // namespace

std::vector<SymbolEntry> address_from_escaping_orbit(const MapParams& p, const std::vector<cplx>& orbit) {
  const std::size_t n = orbit.size();
  if (n < 3) throw Error(ErrorCode::NotEscaping, "orbit too short to show growth");
  const double r0 = std::abs(orbit[n - 3].real()), r1 = std::abs(orbit[n - 2].real()),
               r2 = std::abs(orbit[n - 1].real());
  if (!(r0 < r1 && r1 < r2) || !(r2 > std::abs(orbit[n - 1].imag()) + 10.0)) {
    throw Error(ErrorCode::NotEscaping, "orbit does not grow like a ray tail");
  }

  const std::vector<double> err = error_bounds(p, orbit);
  const double cre = p.critical_re();
  auto side_readable = [&](std::size_t k) { return std::abs(orbit[k].real() - cre) > err[k]; };

  std::vector<SymbolEntry> out;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!(err[k] < kUnreadable) || !side_readable(k) || !side_readable(k + 1)) break;
    const Side side = side_of(p, orbit[k]);
    const Side next = side_of(p, orbit[k + 1]);
    const double raw = (orbit[k].imag() - strip_center_im(p, 0.0, side, next)) / kTwoPi;
    const double idx = std::round(raw);
    if (std::abs(raw - idx) > 0.45) {
      Error e(ErrorCode::AmbiguousStrip, "orbit point sits on a strip boundary");
      e.step = k + 1;
      throw e;
    }
    out.push_back({static_cast<std::int64_t>(idx), side});
  }
  if (out.empty()) throw Error(ErrorCode::NotEscaping, "no readable strip entries");
  return out;
}

double estimate_potential(const MapParams& p, const std::vector<cplx>& orbit) {
  std::vector<double> est;
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    const cplx z = orbit[k];
    if (!std::isfinite(z.real())) break;
    const double v = side_of(p, z) == Side::R ? z.real() + p.alpha.real() : -z.real() + p.beta.real();
    if (!(v >= 10.0)) continue;
    double t = v;
    for (std::size_t j = 0; j < k; ++j) t = std::log1p(t);
    est.push_back(t);
  }
  if (est.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t m = std::min<std::size_t>(3, est.size());
  double sum = 0.0;
  for (std::size_t i = est.size() - m; i < est.size(); ++i) sum += est[i];
  return sum / static_cast<double>(m);
}

namespace {

struct Search {
  const PartitionModel& part;
  const Itinerary& itin;
  std::int64_t bound;
  std::size_t pre;
  std::size_t period;
  std::vector<SymbolEntry> cur;
  std::vector<ExternalAddress> found;

  // The label at a far seed point of the entry agrees with the itinerary up to
  // one half.
  bool plausible(std::size_t k, Side next) const {
    const MapParams& p = part.params;
    const SymbolEntry e = cur[k];
    const double im = strip_center_im(p, static_cast<double>(e.index), e.side, next);
    const double T = 20.0;
    const cplx seed = e.side == Side::R ? cplx(T - p.alpha.real(), im) : cplx(-T + p.beta.real(), im);
    const Location loc = locate(part, seed);
    return std::abs(loc.label.twice - itin.entries[k].twice) <= 1;
  }

  void run() {
    const std::size_t len = pre + period;
    if (cur.size() == len) {
      if (!plausible(len - 1, cur[pre].side)) return;
      std::vector<SymbolEntry> prefix(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(pre));
      std::vector<SymbolEntry> block(cur.begin() + static_cast<std::ptrdiff_t>(pre), cur.end());
      found.push_back(ExternalAddress::periodic(std::move(prefix), std::move(block)));
      return;
    }
    for (Side side : {Side::R, Side::L}) {
      for (std::int64_t j = -bound; j <= bound; ++j) {
        cur.push_back({j, side});
        if (cur.size() < 2 || plausible(cur.size() - 2, side)) run();
        cur.pop_back();
      }
    }
  }
};

}  // namespace

std::vector<ExternalAddress> match_itinerary_to_address(const PartitionModel& part, const Itinerary& itin,
                                                        std::int64_t bound, std::size_t depth,
                                                        const TraceConfig& cfg) {
  const auto& u = itin.entries;
  const std::size_t n = u.size();
  if (depth == 0 || n < depth) throw Error(ErrorCode::InvalidArgument, "itinerary shorter than the search depth");
  if (bound < 0) throw Error(ErrorCode::InvalidArgument, "search bound must be non-negative");

  // Address periods are multiples of the itinerary period; shorter addresses
  // are tried first and the coarse candidate list is capped.
  std::vector<std::pair<std::size_t, std::size_t>> shapes;  // (preperiod, period)
  for (std::size_t pre = 0; pre <= 2; ++pre) {
    for (std::size_t period = 1; period <= depth && pre + period < n; ++period) {
      bool fits = true;
      for (std::size_t k = pre; k + period < n && fits; ++k) fits = u[k] == u[k + period];
      if (!fits) continue;
      for (std::size_t mult = period; mult <= depth && pre + mult < n; mult += period) shapes.emplace_back(pre, mult);
      break;
    }
  }
  std::stable_sort(shapes.begin(), shapes.end(),
                   [](const auto& a, const auto& b) { return a.first + a.second < b.first + b.second; });

  std::vector<ExternalAddress> coarse;
  for (const auto& [pre, period] : shapes) {
    if (coarse.size() >= kCoarseCap) break;
    Search s{part, itin, bound, pre, period, {}, {}};
    s.run();
    coarse.insert(coarse.end(), s.found.begin(), s.found.end());
  }
  if (coarse.size() > kCoarseCap) coarse.erase(coarse.begin() + kCoarseCap, coarse.end());

  auto reproduces = [&](const ExternalAddress& c) {
    if (is_boundary_address(part, c, c.prefix().size() + std::get<PeriodicTail>(c.tail()).block.size() + 1)) {
      return false;
    }
    ExternalAddress cur = c;
    for (std::size_t k = 0; k < n; ++k, cur = cur.shift()) {
      try {
        if (!(itinerary_of_address(part, cur, 1, cfg).entries.front() == u[k])) return false;
      } catch (const Error&) {
        return false;
      }
    }
    return true;
  };

  std::set<std::string> seen;
  std::vector<ExternalAddress> matches, partial;
  for (const auto& cand : coarse) {
    const ExternalAddress c = cand.canonical();
    if (!seen.insert(to_literal(c)).second) continue;
    (reproduces(c) ? matches : partial).push_back(c);
  }
  if (matches.empty()) throw SearchExhaustedError("no bounded address reproduces the itinerary", std::move(partial));
  return matches;
}

Classification classify_point(const PartitionModel& part, cplx z, const ClassifyBudget& budget) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw Error(ErrorCode::InvalidArgument, "point must be finite");
  const MapParams& p = part.params;
  Classification out;

  std::vector<cplx> orbit;
  const EscapeResult esc = escape_orbit(p, z, budget.iter, orbit);
  out.budget_spent = esc.steps;
  if (esc.escaped) {
    try {
      out.prefix = address_from_escaping_orbit(p, orbit);
    } catch (const Error& e) {
      out.reason = e.what();
      return out;
    }
    const double t = estimate_potential(p, orbit);
    // Prefixes carry no tail, so the minimal potential is taken as 0.
    if (!(t > 0.01)) {
      out.prefix.clear();
      out.reason = "escaping, but the potential estimate sits at the minimal potential";
      return out;
    }
    out.kind = ClassKind::OnRay;
    out.potential = t;
    return out;
  }

  Itinerary itin;
  try {
    itin = itinerary_of_point(part, z, budget.itin);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::OnBoundary) throw;
    out.kind = ClassKind::PostsingularOrPreimage;
    return out;
  }

  if (!itin.escaped_beyond_range && itin.entries.size() >= budget.depth) {
    std::vector<ExternalAddress> matches;
    try {
      matches = match_itinerary_to_address(part, itin, budget.search_bound, budget.depth, budget.trace);
    } catch (const SearchExhaustedError&) {
    }
    for (const auto& s : matches) {
      const LandingResult lr = landing_point(p, s, budget.trace);
      if (std::abs(lr.z - z) < kLandingAgreement) out.candidates.push_back(s);
    }
    if (!out.candidates.empty()) {
      out.kind = ClassKind::LandingPoint;
      return out;
    }
  }

  try {
    const PostsingularData post = compute_postsingular(p);
    for (std::size_t k = 0; k < orbit.size() && k <= budget.itin; ++k) {
      if (post.contains(orbit[k], 1e-9)) {
        out.kind = ClassKind::PostsingularOrPreimage;
        return out;
      }
    }
  } catch (const Error&) {
  }
  out.reason = itin.escaped_beyond_range ? "orbit left the representable range without a growth signature"
                                         : "no landing address found within the search bounds";
  return out;
}

}  // namespace cosrays
