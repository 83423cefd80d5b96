#pragma once

// The family E(z) = a e^z + b e^{-z}.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "cosrays/symbolic.hpp"

namespace cosrays {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kMaxRealPart = 700.0;

struct MapParams {
  cplx a;
  cplx b;
  cplx alpha;    // principal Log a
  cplx beta;     // principal Log b
  cplx v;        // 2 sqrt(ab)
  cplx v_prime;  // -v

  // Derived fields are always recomputed here. Throws InvalidArgument for a == 0 or b == 0.
  static MapParams from_coefficients(cplx a, cplx b);

  // Re of every critical point; |e^z| = sqrt|b/a| on this vertical line.
  double critical_re() const;
};

cplx evaluate(const MapParams& p, cplx z);
cplx derivative(const MapParams& p, cplx z);

std::vector<cplx> critical_points(const MapParams& p, double im_lo, double im_hi);

// Solves E(z) = w on the requested side of the critical line with
// |Im z - target_im| <= pi.
cplx inverse_branch(const MapParams& p, cplx w, Side side, double target_im);
// Same without the AmbiguousSide check, for callers that know the side from
// context (deep pullbacks converging onto the critical line image).
cplx inverse_branch_unchecked(const MapParams& p, cplx w, Side side, double target_im);

MapParams sinh_family_params(int k);

// b = -a with both critical values landing on fixed points after one step:
// a (1 - sin 2a) = pi k.
cplx fixed_value_family_residual(cplx a, int k);
cplx default_fixed_value_seed(int k);
MapParams solve_fixed_value_family(int k, std::optional<cplx> seed = std::nullopt);

struct PostsingularData {
  std::vector<cplx> points;
  std::size_t preperiod_v = 0;
  std::size_t preperiod_vprime = 0;
  std::size_t period_v = 0;
  std::size_t period_vprime = 0;
  std::vector<cplx> multipliers;  // one per distinct cycle
  std::vector<std::vector<cplx>> cycles;

  bool contains(cplx z, double tol) const;
};

PostsingularData compute_postsingular(const MapParams& p, std::size_t max_pre = 16, std::size_t max_period = 16);

}  // namespace cosrays
