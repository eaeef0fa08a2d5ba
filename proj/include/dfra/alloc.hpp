#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "dfra/channel.hpp"

namespace dfra {

enum class Scheme {
  kSelectiveSum,        // relay mode fixed by channel gains, one sum budget
  kEnhancedSum,         // source reuses idle subcarriers, one sum budget
  kEnhancedIndividual,  // enhanced with separate source/relay budgets
};

const char* scheme_name(Scheme s);
Scheme scheme_from_name(std::string_view name);  // throws std::invalid_argument

struct PowerBudget {
  double total = 0.0;   // P_t, sum-budget schemes
  double source = 0.0;  // P_S, individual budgets
  double relay = 0.0;   // P_R

  static PowerBudget sum(double p_t) { return {p_t, 0.0, 0.0}; }
  static PowerBudget individual(double p_s, double p_r) { return {0.0, p_s, p_r}; }
};

// perm[m] = n pairs listening subcarrier m with relaying subcarrier n.
struct Pairing {
  std::vector<int> perm;
  bool is_permutation() const;
};

// relaying[m] applies to pair (m, perm[m]).
struct ModeVector {
  std::vector<std::uint8_t> relaying;
};

struct PairPowers {
  struct Entry {
    double p_s1 = 0.0;  // source, listening phase
    double p_r = 0.0;   // relay, relaying phase
    double p_s2 = 0.0;  // source on the idle subcarrier, relaying phase
  };
  std::vector<Entry> per_pair;  // indexed by listening subcarrier m
};

struct SolverOptions {
  int max_iter = 2000;
  double eps = 1e-4;         // relative multiplier-change stop tolerance
  double step_scale = 0.01;  // iteration i uses step_scale / sqrt(i)
  double alpha_init = 1.0;
  double beta_init = 0.0;
  double mu_init = 1.0;
};

struct Allocation {
  Scheme scheme = Scheme::kSelectiveSum;
  Pairing pairing;
  ModeVector modes;
  PairPowers powers;
  double sum_rate = 0.0;      // bit/s/Hz, includes the half-duplex 1/2 factor
  double dual_value = 0.0;    // best dual bound seen over the iterations
  double gap_estimate = 0.0;  // dual_value - sum_rate
  int iterations = 0;
  bool converged = true;
};

// Multiplier state of the subgradient loops (diagnostic / test surface).
struct DualState {
  double alpha = 1.0;
  double mu_s = 1.0;
  double mu_r = 1.0;
  std::vector<double> beta;
  int iter = 0;
};

// One subgradient update x <- x - step * residual. A zero residual is a fixed
// point.
inline double subgradient_step(double x, double step, double residual) {
  return x - step * residual;
}

// Relaying helps pair (m, n) iff min(sr[m], rd[n]) > sd[m].
bool relay_useful(const GainSet& g, int m, int n);

// Relaying: sr*rd / (sr + rd - sd); idle: sd[m]. The relaying form requires
// relay_useful(g, m, n); violating it throws std::domain_error.
double equivalent_gain(const GainSet& g, int m, int n, bool relaying);

// Splits a pair's total power so the relay's decode rate balances the
// destination's combined rate. Idle pairs put everything on the source.
// Returns {p_s1, p_r} with p_s1 + p_r = total.
std::pair<double, double> split_pair_power(const GainSet& g, int m, int n, double total,
                                           bool relaying);

// Two-phase rate of one pair. Idle pairs earn the direct-link term (plus, for
// the enhanced schemes, the second-phase direct term); relaying pairs earn
// 0.5*log2(1 + (p_s1+p_r) * equivalent gain).
double pair_rate(const GainSet& g, int m, int n, const PairPowers::Entry& e, bool relaying,
                 Scheme scheme);

// Maximum-weight perfect matching over the final per-pair score matrix
// (row-major, n x n). Deterministic, ties resolve toward low (m, n).
Pairing finalize_pairing(std::span<const double> t, int n);

Allocation solve_selective_sum(const GainSet& g, const PowerBudget& budget,
                               const SolverOptions& opts = {});
Allocation solve_enhanced_sum(const GainSet& g, const PowerBudget& budget,
                              const SolverOptions& opts = {});
Allocation solve_enhanced_individual(const GainSet& g, const PowerBudget& budget,
                                     const SolverOptions& opts = {});
Allocation solve(Scheme scheme, const GainSet& g, const PowerBudget& budget,
                 const SolverOptions& opts = {});

// Re-evaluates the rate from (pairing, modes, powers); solvers store exactly
// this value in sum_rate. Malformed allocations raise std::logic_error.
double recompute_rate(const Allocation& a, const GainSet& g);

// Mode preferred by the individual-budget dual at prices (mu_s, mu_r); ties go
// to relaying mode. Caps bound the closed-form powers.
struct IndividualModeEval {
  bool relay = false;
  double rate_relay = 0.0;
  double rate_idle = 0.0;
};
IndividualModeEval individual_mode_eval(
    const GainSet& g, int m, int n, double mu_s, double mu_r,
    double cap_relay = std::numeric_limits<double>::infinity(),
    double cap_idle = std::numeric_limits<double>::infinity());

// Optimal powers for a fixed pairing and mode set under separate source and
// relay budgets (nested dual bisection; residuals driven below 1e-8 relative).
struct IndividualFit {
  PairPowers powers;
  double rate = 0.0;
  double mu_s = 0.0;
  double mu_r = 0.0;
};
IndividualFit fit_individual_powers(const GainSet& g, const Pairing& pairing,
                                    const ModeVector& modes, double p_source, double p_relay);

}  // namespace dfra
