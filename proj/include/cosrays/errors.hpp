#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cosrays {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  NotExponentiallyBounded,
  OverflowRange,
  CriticalValueHit,
  AmbiguousSide,
  NewtonDivergence,
  WrongBasin,
  NotPreperiodic,
  PullbackHitCriticalValue,
  DepthExhausted,
  NoConvergence,
  RayDoesNotLandAtCriticalValue,
  PartitionGeometry,
  OnBoundary,
  BoundaryRay,
  NotEscaping,
  AmbiguousStrip,
  SearchExhausted,
  TooFewPoints,
};

std::string_view to_string(ErrorCode code);

// Domain error. Optional context: the orbit step at which it happened, or the
// ray potential being traced.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  std::optional<std::size_t> step;
  std::optional<double> potential;

 private:
  ErrorCode code_;
};

}  // namespace cosrays
