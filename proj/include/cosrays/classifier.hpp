#pragma once

// Point classification: on a ray, landing point of rays, postsingular (or a
// preimage of the partition boundary), or undecided.

#include <cstddef>
#include <string>
#include <vector>

#include "cosrays/cosine_map.hpp"
#include "cosrays/errors.hpp"
#include "cosrays/partition.hpp"
#include "cosrays/symbolic.hpp"

namespace cosrays {

enum class ClassKind { OnRay, LandingPoint, PostsingularOrPreimage, Undecided };

std::string_view to_string(ClassKind kind);

struct Classification {
  ClassKind kind = ClassKind::Undecided;
  std::vector<SymbolEntry> prefix;           // OnRay
  double potential = 0.0;                    // OnRay
  std::vector<ExternalAddress> candidates;   // LandingPoint
  std::string reason;                        // Undecided
  std::size_t budget_spent = 0;              // iterations used
};

struct ClassifyBudget {
  std::size_t iter = 60;
  std::size_t itin = 12;
  std::int64_t search_bound = 3;
  std::size_t depth = 8;
  TraceConfig trace;
};

// Strip entries read off an orbit that grows like a ray tail. Entry k comes
// from orbit[k]; the last orbit point only fixes the side of the entry before
// it. The prefix stops where accumulated rounding makes the strip unreadable.
std::vector<SymbolEntry> address_from_escaping_orbit(const MapParams& p, const std::vector<cplx>& orbit);

// Potential estimate from the real parts of an escaping orbit.
double estimate_potential(const MapParams& p, const std::vector<cplx>& orbit);

class SearchExhaustedError : public Error {
 public:
  SearchExhaustedError(const std::string& what, std::vector<ExternalAddress> partial)
      : Error(ErrorCode::SearchExhausted, what), partial(std::move(partial)) {}
  // Candidates that passed the coarse label filter but not the exact check.
  std::vector<ExternalAddress> partial;
};

// Bounded addresses (|s_k| <= bound, preperiod <= 2, period <= depth) whose
// ray itinerary equals itin on every entry.
std::vector<ExternalAddress> match_itinerary_to_address(const PartitionModel& part, const Itinerary& itin,
                                                        std::int64_t bound, std::size_t depth,
                                                        const TraceConfig& cfg = {});

Classification classify_point(const PartitionModel& part, cplx z, const ClassifyBudget& budget = {});

}  // namespace cosrays
