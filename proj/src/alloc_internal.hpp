#pragma once

#include <cmath>
#include <vector>

#include "dfra/alloc.hpp"

namespace dfra::detail {

// Multipliers on inequality constraints live in [kMultiplierFloor, hi]; the
// floor keeps the closed-form powers finite.
inline constexpr double kMultiplierFloor = 1e-12;

struct WaterTerm {
  double value = 0.0;
  double power = 0.0;
};

// max over p in [0, cap] of 0.5*log2(1 + g*p) - price*p, price > 0. The cap is
// the per-pair feasibility bound, so the dual stays a valid upper bound while
// the subgradient residuals stay problem-scaled.
inline WaterTerm water_term(double g, double price, double cap) {
  if (!(g > 0.0) || !(cap > 0.0)) return {};
  double p = 0.5 / price - 1.0 / g;
  if (!(p > 0.0)) return {};
  if (p > cap) p = cap;
  return {0.5 * std::log2(1.0 + g * p) - price * p, p};
}

inline double clampd(double x, double lo, double hi) { return x < lo ? lo : (x > hi ? hi : x); }

inline double rel_change(double next, double prev) {
  return std::abs(next - prev) / std::max(std::abs(next), kMultiplierFloor);
}

inline double rel_change(const std::vector<double>& next, const std::vector<double>& prev) {
  double dd = 0.0, nn = 0.0;
  for (std::size_t i = 0; i < next.size(); ++i) {
    const double d = next[i] - prev[i];
    dd += d * d;
    nn += next[i] * next[i];
  }
  return std::sqrt(dd) / std::max(std::sqrt(nn), kMultiplierFloor);
}

// A decode-balance power split exists iff sr > sd (otherwise the relay share
// would be negative).
inline bool relay_split_realizable(const GainSet& g, int m, int n) {
  (void)n;
  return g.sr[m] > g.sd[m];
}

inline double relay_eq_gain(const GainSet& g, int m, int n) {
  const double denom = g.sr[m] + g.rd[n] - g.sd[m];
  return denom > 0.0 ? g.sr[m] * g.rd[n] / denom : 0.0;
}

void validate_options(const SolverOptions& opts);
void check_pair_index(const GainSet& g, int m, int n);

// Identity pairing, zero powers, zero rate. Selective keeps its gain-fixed
// modes; the enhanced schemes go all-idle.
Allocation zero_allocation(Scheme scheme, const GainSet& g);

}  // namespace dfra::detail
