#pragma once

// External addresses over Z_L ∪ Z_R, the shift, and the growth function
// F(t) = e^t - 1 that governs potentials.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cosrays {

enum class Side : std::uint8_t { L, R };

struct SymbolEntry {
  std::int64_t index = 0;
  Side side = Side::R;

  friend bool operator==(const SymbolEntry&, const SymbolEntry&) = default;
};

inline SymbolEntry sym_r(std::int64_t i) { return {i, Side::R}; }
inline SymbolEntry sym_l(std::int64_t i) { return {i, Side::L}; }

// Repeated block (b_1 ... b_p)^∞.
struct PeriodicTail {
  std::vector<SymbolEntry> block;
};

// Deterministic rule for tail entry j (j >= 1, tail-relative) with a declared
// bound |index| <= bound. `offset` counts shifts already applied.
struct BoundedGenerator {
  std::function<SymbolEntry(std::uint64_t)> rule;
  std::int64_t bound = 0;
  std::uint64_t offset = 0;
  std::string name;
};

// Unbounded but exponentially bounded tail: entry j has |index| =
// round(F^{j-1}(x0)) on a fixed side. x0 itself is the boundedness certificate.
struct GrowthTail {
  double x0 = 1.0;
  Side side = Side::R;
};

using AddressTail = std::variant<PeriodicTail, BoundedGenerator, GrowthTail>;

class ExternalAddress {
 public:
  ExternalAddress(std::vector<SymbolEntry> prefix, AddressTail tail);

  static ExternalAddress periodic(std::vector<SymbolEntry> prefix, std::vector<SymbolEntry> block);
  static ExternalAddress constant(SymbolEntry e) { return periodic({}, {e}); }

  const std::vector<SymbolEntry>& prefix() const { return prefix_; }
  const AddressTail& tail() const { return tail_; }

  bool has_periodic_tail() const { return std::holds_alternative<PeriodicTail>(tail_); }
  bool is_bounded() const { return !std::holds_alternative<GrowthTail>(tail_); }

  // k is 1-based. Throws InvalidArgument for k == 0 and for growth entries whose
  // index no longer fits in 62 bits.
  SymbolEntry entry(std::size_t k) const;
  Side side(std::size_t k) const;
  // log|s_k| without integer overflow (-inf for index 0, +inf once the growth
  // tail leaves the log-domain range).
  double log_magnitude(std::size_t k) const;

  // Upper bound on |index| over all tail entries, if the tail is bounded.
  std::optional<std::int64_t> tail_bound() const;

  ExternalAddress shift() const;
  ExternalAddress shift(std::size_t times) const;
  // Replaces entry 1 (prefix is extended when necessary).
  ExternalAddress with_first(SymbolEntry e) const;
  ExternalAddress prepend(SymbolEntry e) const;

  // Minimal period, prefix absorbed into the tail where possible. Only defined
  // for periodic tails; generator tails are returned unchanged.
  ExternalAddress canonical() const;
  // Equality of the represented sequences (periodic tails), or of the first
  // `depth` entries when a generator tail is involved.
  bool same_sequence(const ExternalAddress& other, std::size_t depth = 64) const;

 private:
  std::vector<SymbolEntry> prefix_;
  AddressTail tail_;
};

// Literal syntax: "3R 1L (0R 2R)*". Printer output re-parses to the same
// representation; generator tails print as "<name>" and do not parse.
std::string to_literal(const ExternalAddress& s);
ExternalAddress parse_address(const std::string& literal);

struct Potential {
  double t = 0.0;
};

// u ∈ Z/2 stored as twice its value.
struct HalfInteger {
  std::int64_t twice = 0;

  static HalfInteger from_double(double u);
  double value() const { return static_cast<double>(twice) / 2.0; }
  HalfInteger operator+(std::int64_t n) const { return {twice + 2 * n}; }
  friend bool operator==(const HalfInteger&, const HalfInteger&) = default;
};

std::string to_string(HalfInteger u);

struct Itinerary {
  std::vector<HalfInteger> entries;
  // Set when the orbit left the representable range before `length` entries.
  bool escaped_beyond_range = false;

  friend bool operator==(const Itinerary& a, const Itinerary& b) { return a.entries == b.entries; }
};

// ---- growth function -------------------------------------------------------

inline constexpr double kGrowthCap = 1e300;

struct GrowthValue {
  double value = 0.0;
  bool saturated = false;
};

double growth(double t);  // F(t) = e^t - 1
GrowthValue growth_iterate(double t, std::size_t k, double cap = kGrowthCap);
// log F^k(t), finite one level beyond growth_iterate's range.
double log_growth_iterate(double t, std::size_t k);
// Inverse of F: log(1 + y).
double growth_inverse(double y);

bool is_exponentially_bounded(const ExternalAddress& s, std::size_t probe_depth = 40);

struct MinimalPotentialOptions {
  std::size_t probe_depth = 40;
  double tol = 1e-9;
  double ratio_tol = 1e-6;
};

Potential minimal_potential(const ExternalAddress& s, const MinimalPotentialOptions& opt = {});

}  // namespace cosrays
