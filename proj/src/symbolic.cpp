#include "cosrays/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <regex>
#include <sstream>

#include "cosrays/errors.hpp"

namespace cosrays {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotExponentiallyBounded: return "NotExponentiallyBounded";
    case ErrorCode::OverflowRange: return "OverflowRange";
    case ErrorCode::CriticalValueHit: return "CriticalValueHit";
    case ErrorCode::AmbiguousSide: return "AmbiguousSide";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::WrongBasin: return "WrongBasin";
    case ErrorCode::NotPreperiodic: return "NotPreperiodic";
    case ErrorCode::PullbackHitCriticalValue: return "PullbackHitCriticalValue";
    case ErrorCode::DepthExhausted: return "DepthExhausted";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::RayDoesNotLandAtCriticalValue: return "RayDoesNotLandAtCriticalValue";
    case ErrorCode::PartitionGeometry: return "PartitionGeometry";
    case ErrorCode::OnBoundary: return "OnBoundary";
    case ErrorCode::BoundaryRay: return "BoundaryRay";
    case ErrorCode::NotEscaping: return "NotEscaping";
    case ErrorCode::AmbiguousStrip: return "AmbiguousStrip";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
  }
  return "Unknown";
}

// ---- growth function -------------------------------------------------------

namespace {
constexpr double kExpSafe = 700.0;
constexpr double kMaxIndex = 4.0e18;
}  // namespace

double growth(double t) { return std::expm1(t); }

double growth_inverse(double y) { return std::log1p(y); }

GrowthValue growth_iterate(double t, std::size_t k, double cap) {
  double y = t;
  for (std::size_t i = 0; i < k; ++i) {
    if (y > kExpSafe) return {std::numeric_limits<double>::infinity(), true};
    y = std::expm1(y);
    if (!(y <= cap)) return {std::numeric_limits<double>::infinity(), true};
  }
  return {y, false};
}

double log_growth_iterate(double t, std::size_t k) {
  double y = t;
  bool in_log = false;
  for (std::size_t i = 0; i < k; ++i) {
    if (!in_log) {
      if (y <= kExpSafe) {
        y = std::expm1(y);
      } else {
        // log F(y) = y + log1p(-e^{-y}) == y at this size
        in_log = true;
      }
    } else {
      if (y > kExpSafe) return std::numeric_limits<double>::infinity();
      y = std::exp(y);
    }
  }
  return in_log ? y : std::log(y);
}

// ---- addresses -------------------------------------------------------------

ExternalAddress::ExternalAddress(std::vector<SymbolEntry> prefix, AddressTail tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  if (const auto* p = std::get_if<PeriodicTail>(&tail_); p && p->block.empty()) {
    throw Error(ErrorCode::InvalidArgument, "periodic tail must be non-empty");
  }
  if (const auto* g = std::get_if<BoundedGenerator>(&tail_); g && !g->rule) {
    throw Error(ErrorCode::InvalidArgument, "generator tail without a rule");
  }
  if (const auto* g = std::get_if<GrowthTail>(&tail_); g && !(g->x0 >= 0.0 && std::isfinite(g->x0))) {
    throw Error(ErrorCode::InvalidArgument, "growth tail needs finite x0 >= 0");
  }
}

ExternalAddress ExternalAddress::periodic(std::vector<SymbolEntry> prefix, std::vector<SymbolEntry> block) {
  return ExternalAddress(std::move(prefix), PeriodicTail{std::move(block)});
}

SymbolEntry ExternalAddress::entry(std::size_t k) const {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "address entries are 1-based");
  if (k <= prefix_.size()) return prefix_[k - 1];
  const std::uint64_t j = k - prefix_.size();
  return std::visit(
      [&](const auto& tail) -> SymbolEntry {
        using T = std::decay_t<decltype(tail)>;
        if constexpr (std::is_same_v<T, PeriodicTail>) {
          return tail.block[(j - 1) % tail.block.size()];
        } else if constexpr (std::is_same_v<T, BoundedGenerator>) {
          return tail.rule(j + tail.offset);
        } else {
          const GrowthValue v = growth_iterate(tail.x0, j - 1);
          if (v.saturated || v.value > kMaxIndex) {
            throw Error(ErrorCode::InvalidArgument, "growth entry exceeds integer range");
          }
          return {std::llround(v.value), tail.side};
        }
      },
      tail_);
}

Side ExternalAddress::side(std::size_t k) const {
  if (k > prefix_.size()) {
    if (const auto* g = std::get_if<GrowthTail>(&tail_)) return g->side;
  }
  return entry(k).side;
}

double ExternalAddress::log_magnitude(std::size_t k) const {
  if (k > prefix_.size()) {
    if (const auto* g = std::get_if<GrowthTail>(&tail_)) {
      const std::size_t j = k - prefix_.size();
      const GrowthValue v = growth_iterate(g->x0, j - 1);
      if (!v.saturated && v.value <= kMaxIndex) {
        const double r = std::round(v.value);
        return r == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(r);
      }
      return log_growth_iterate(g->x0, j - 1);
    }
  }
  const std::int64_t i = entry(k).index;
  return i == 0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(static_cast<double>(i)));
}

std::optional<std::int64_t> ExternalAddress::tail_bound() const {
  if (const auto* p = std::get_if<PeriodicTail>(&tail_)) {
    std::int64_t b = 0;
    for (const auto& e : p->block) b = std::max(b, std::abs(e.index));
    return b;
  }
  if (const auto* g = std::get_if<BoundedGenerator>(&tail_)) return g->bound;
  return std::nullopt;
}

ExternalAddress ExternalAddress::shift() const {
  if (!prefix_.empty()) {
    return ExternalAddress(std::vector<SymbolEntry>(prefix_.begin() + 1, prefix_.end()), tail_);
  }
  return std::visit(
      [&](const auto& tail) -> ExternalAddress {
        using T = std::decay_t<decltype(tail)>;
        if constexpr (std::is_same_v<T, PeriodicTail>) {
          std::vector<SymbolEntry> b = tail.block;
          std::rotate(b.begin(), b.begin() + 1, b.end());
          return ExternalAddress({}, PeriodicTail{std::move(b)});
        } else if constexpr (std::is_same_v<T, BoundedGenerator>) {
          BoundedGenerator g = tail;
          ++g.offset;
          return ExternalAddress({}, std::move(g));
        } else {
          const GrowthValue v = growth_iterate(tail.x0, 1);
          if (v.saturated) throw Error(ErrorCode::InvalidArgument, "growth tail certificate overflows on shift");
          return ExternalAddress({}, GrowthTail{v.value, tail.side});
        }
      },
      tail_);
}

ExternalAddress ExternalAddress::shift(std::size_t times) const {
  ExternalAddress s = *this;
  for (std::size_t i = 0; i < times; ++i) s = s.shift();
  return s;
}

ExternalAddress ExternalAddress::with_first(SymbolEntry e) const {
  return shift().prepend(e);
}

ExternalAddress ExternalAddress::prepend(SymbolEntry e) const {
  std::vector<SymbolEntry> p;
  p.reserve(prefix_.size() + 1);
  p.push_back(e);
  p.insert(p.end(), prefix_.begin(), prefix_.end());
  return ExternalAddress(std::move(p), tail_);
}

ExternalAddress ExternalAddress::canonical() const {
  const auto* tail = std::get_if<PeriodicTail>(&tail_);
  if (!tail) return *this;
  std::vector<SymbolEntry> block = tail->block;
  const std::size_t p = block.size();
  for (std::size_t d = 1; d < p; ++d) {
    if (p % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < p && ok; ++i) ok = block[i] == block[i - d];
    if (ok) {
      block.resize(d);
      break;
    }
  }
  std::vector<SymbolEntry> prefix = prefix_;
  while (!prefix.empty() && prefix.back() == block.back()) {
    std::rotate(block.rbegin(), block.rbegin() + 1, block.rend());
    prefix.pop_back();
  }
  return ExternalAddress(std::move(prefix), PeriodicTail{std::move(block)});
}

bool ExternalAddress::same_sequence(const ExternalAddress& other, std::size_t depth) const {
  if (has_periodic_tail() && other.has_periodic_tail()) {
    const ExternalAddress a = canonical();
    const ExternalAddress b = other.canonical();
    return a.prefix_ == b.prefix_ &&
           std::get<PeriodicTail>(a.tail_).block == std::get<PeriodicTail>(b.tail_).block;
  }
  for (std::size_t k = 1; k <= depth; ++k) {
    if (side(k) != other.side(k) || log_magnitude(k) != other.log_magnitude(k)) return false;
    if (log_magnitude(k) < 40.0 && entry(k) != other.entry(k)) return false;
  }
  return true;
}

// ---- literal syntax --------------------------------------------------------

namespace {

std::string entry_literal(const SymbolEntry& e) {
  return std::to_string(e.index) + (e.side == Side::R ? "R" : "L");
}

SymbolEntry parse_entry(const std::string& tok) {
  static const std::regex re(R"(^(-?[0-9]+)([LR])$)");
  std::smatch m;
  if (!std::regex_match(tok, m, re)) {
    throw Error(ErrorCode::ParseError, "bad address entry '" + tok + "'");
  }
  try {
    return {std::stoll(m[1].str()), m[2].str() == "R" ? Side::R : Side::L};
  } catch (const std::out_of_range&) {
    throw Error(ErrorCode::ParseError, "address index out of range '" + tok + "'");
  }
}

}  // namespace

std::string to_literal(const ExternalAddress& s) {
  std::string out;
  for (const auto& e : s.prefix()) {
    out += entry_literal(e);
    out += ' ';
  }
  std::visit(
      [&](const auto& tail) {
        using T = std::decay_t<decltype(tail)>;
        if constexpr (std::is_same_v<T, PeriodicTail>) {
          out += '(';
          for (std::size_t i = 0; i < tail.block.size(); ++i) {
            if (i) out += ' ';
            out += entry_literal(tail.block[i]);
          }
          out += ")*";
        } else if constexpr (std::is_same_v<T, BoundedGenerator>) {
          out += "<" + (tail.name.empty() ? std::string("generator") : tail.name) + "+" +
                 std::to_string(tail.offset) + ">";
        } else {
          std::ostringstream os;
          os.precision(17);
          os << "<growth x0=" << tail.x0 << (tail.side == Side::R ? " R" : " L") << ">";
          out += os.str();
        }
      },
      s.tail());
  return out;
}

ExternalAddress parse_address(const std::string& literal) {
  std::string spaced;
  for (std::size_t i = 0; i < literal.size(); ++i) {
    const char c = literal[i];
    if (c == '(') {
      spaced += " ( ";
    } else if (c == ')' && i + 1 < literal.size() && literal[i + 1] == '*') {
      spaced += " )* ";
      ++i;
    } else {
      spaced += c;
    }
  }
  std::istringstream in(spaced);
  std::vector<std::string> toks;
  for (std::string t; in >> t;) toks.push_back(t);

  std::vector<SymbolEntry> prefix, block;
  std::size_t i = 0;
  for (; i < toks.size() && toks[i] != "("; ++i) prefix.push_back(parse_entry(toks[i]));
  if (i == toks.size()) throw Error(ErrorCode::ParseError, "address needs a periodic tail '( ... )*'");
  for (++i; i < toks.size() && toks[i] != ")*"; ++i) block.push_back(parse_entry(toks[i]));
  if (i == toks.size()) throw Error(ErrorCode::ParseError, "unterminated periodic tail");
  if (i + 1 != toks.size()) throw Error(ErrorCode::ParseError, "trailing tokens after ')*'");
  if (block.empty()) throw Error(ErrorCode::ParseError, "empty periodic tail");
  return ExternalAddress::periodic(std::move(prefix), std::move(block));
}

HalfInteger HalfInteger::from_double(double u) {
  const double twice = 2.0 * u;
  const double r = std::round(twice);
  if (std::abs(twice - r) > 1e-9) throw Error(ErrorCode::InvalidArgument, "not a half-integer");
  return {static_cast<std::int64_t>(r)};
}

std::string to_string(HalfInteger u) {
  if (u.twice % 2 == 0) return std::to_string(u.twice / 2);
  return std::to_string(u.twice) + "/2";
}

// ---- boundedness and minimal potential --------------------------------------

bool is_exponentially_bounded(const ExternalAddress& s, std::size_t probe_depth) {
  if (probe_depth == 0) throw Error(ErrorCode::InvalidArgument, "probe_depth must be >= 1");

  if (const auto* g = std::get_if<BoundedGenerator>(&s.tail())) {
    for (std::size_t k = s.prefix().size() + 1; k <= probe_depth; ++k) {
      if (std::abs(s.entry(k).index) > g->bound) return false;
    }
  }

  // The tail descriptors above certify the tail; the grid search covers the
  // probed entries including the prefix.
  for (int e = 0; e <= 20; ++e) {
    const double x = std::ldexp(1.0, e);
    bool ok = true;
    for (std::size_t k = 1; k <= probe_depth && ok; ++k) {
      const double lm = s.log_magnitude(k);
      const double lf = log_growth_iterate(x, k - 1);
      if (std::isinf(lf)) break;
      ok = lm <= lf + 1e-12;
    }
    if (ok) return true;
  }
  return false;
}

namespace {

bool ratio_vanishes(const ExternalAddress& s, double t, const MinimalPotentialOptions& opt) {
  const double log_tol = std::log(opt.ratio_tol);
  std::vector<double> log_ratio;
  for (std::size_t k = 1; k <= opt.probe_depth; ++k) {
    const double lm = s.log_magnitude(k);
    const double lf = log_growth_iterate(t, k);
    if (std::isinf(lf) && std::isinf(lm)) break;
    if (std::isinf(lf)) {
      log_ratio.push_back(-std::numeric_limits<double>::infinity());
      break;
    }
    log_ratio.push_back(lm - lf);
    if (std::isinf(lm)) break;
  }
  if (log_ratio.empty()) return false;
  const double last = log_ratio.back();
  const bool decreasing = log_ratio.size() < 2 || last <= log_ratio[log_ratio.size() - 2];
  return last < log_tol && decreasing;
}

}  // namespace

Potential minimal_potential(const ExternalAddress& s, const MinimalPotentialOptions& opt) {
  if (!is_exponentially_bounded(s, opt.probe_depth)) {
    throw Error(ErrorCode::NotExponentiallyBounded, "address fails the exponential-boundedness probe");
  }
  if (s.is_bounded()) return {0.0};

  double lo = 0.0;
  double hi = 1.0;
  while (!ratio_vanishes(s, hi, opt)) {
    lo = hi;
    hi *= 2.0;
    if (hi > kExpSafe) throw Error(ErrorCode::NotExponentiallyBounded, "no finite potential dominates the address");
  }
  while (hi - lo > opt.tol) {
    const double mid = 0.5 * (lo + hi);
    (ratio_vanishes(s, mid, opt) ? hi : lo) = mid;
  }
  return {0.5 * (lo + hi)};
}

}  // namespace cosrays
