#include "dfra/alloc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "alloc_internal.hpp"
#include "dfra/matching.hpp"
#include "dfra/waterfill.hpp"

namespace dfra {

namespace detail {

void validate_options(const SolverOptions& opts) {
  if (opts.max_iter < 1) throw std::invalid_argument("SolverOptions: max_iter must be >= 1");
  if (!(opts.eps > 0.0)) throw std::invalid_argument("SolverOptions: eps must be > 0");
  if (!(opts.step_scale > 0.0)) throw std::invalid_argument("SolverOptions: step_scale must be > 0");
  if (!(opts.alpha_init > 0.0) || !(opts.mu_init > 0.0))
    throw std::invalid_argument("SolverOptions: multiplier initializers must be > 0");
  if (!std::isfinite(opts.beta_init))
    throw std::invalid_argument("SolverOptions: beta_init must be finite");
}

void check_pair_index(const GainSet& g, int m, int n) {
  if (m < 0 || n < 0 || m >= g.n() || n >= g.n())
    throw std::invalid_argument("pair index out of range");
}

Allocation zero_allocation(Scheme scheme, const GainSet& g) {
  const int n = g.n();
  Allocation a;
  a.scheme = scheme;
  a.pairing.perm.resize(n);
  std::iota(a.pairing.perm.begin(), a.pairing.perm.end(), 0);
  a.modes.relaying.assign(n, 0);
  if (scheme == Scheme::kSelectiveSum) {
    for (int m = 0; m < n; ++m) a.modes.relaying[m] = relay_useful(g, m, m) ? 1 : 0;
  }
  a.powers.per_pair.assign(n, {});
  a.sum_rate = 0.0;
  a.dual_value = 0.0;
  a.gap_estimate = 0.0;
  a.iterations = 0;
  a.converged = true;
  return a;
}

}  // namespace detail

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kSelectiveSum: return "selective_sum";
    case Scheme::kEnhancedSum: return "enhanced_sum";
    case Scheme::kEnhancedIndividual: return "enhanced_individual";
  }
  return "unknown";
}

Scheme scheme_from_name(std::string_view name) {
  if (name == "selective_sum" || name == "selective") return Scheme::kSelectiveSum;
  if (name == "enhanced_sum" || name == "enhanced") return Scheme::kEnhancedSum;
  if (name == "enhanced_individual" || name == "individual") return Scheme::kEnhancedIndividual;
  throw std::invalid_argument("unknown scheme: " + std::string(name));
}

bool Pairing::is_permutation() const {
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return n > 0;
}

bool relay_useful(const GainSet& g, int m, int n) {
  detail::check_pair_index(g, m, n);
  return std::min(g.sr[m], g.rd[n]) > g.sd[m];
}

double equivalent_gain(const GainSet& g, int m, int n, bool relaying) {
  detail::check_pair_index(g, m, n);
  if (!relaying) return g.sd[m];
  if (!relay_useful(g, m, n))
    throw std::domain_error("equivalent_gain: relaying requested but the relay criterion fails");
  return g.sr[m] * g.rd[n] / (g.sr[m] + g.rd[n] - g.sd[m]);
}

std::pair<double, double> split_pair_power(const GainSet& g, int m, int n, double total,
                                           bool relaying) {
  detail::check_pair_index(g, m, n);
  if (!(total >= 0.0) || !std::isfinite(total))
    throw std::invalid_argument("split_pair_power: total power must be finite and >= 0");
  if (!relaying) return {total, 0.0};
  const double denom = g.sr[m] + g.rd[n] - g.sd[m];
  if (!(denom > 0.0) || g.sr[m] < g.sd[m])
    throw std::domain_error("split_pair_power: decode-balance split undefined for these gains");
  const double p_s1 = g.rd[n] / denom * total;
  return {p_s1, total - p_s1};  // exact sum by construction
}

double pair_rate(const GainSet& g, int m, int n, const PairPowers::Entry& e, bool relaying,
                 Scheme scheme) {
  detail::check_pair_index(g, m, n);
  if (relaying) {
    const double denom = g.sr[m] + g.rd[n] - g.sd[m];
    if (!(denom > 0.0) || g.sr[m] < g.sd[m])
      throw std::domain_error("pair_rate: relaying mode infeasible for these gains");
    const double eq = g.sr[m] * g.rd[n] / denom;
    return 0.5 * std::log2(1.0 + (e.p_s1 + e.p_r) * eq);
  }
  double r = 0.5 * std::log2(1.0 + e.p_s1 * g.sd[m]);
  if (scheme != Scheme::kSelectiveSum) r += 0.5 * std::log2(1.0 + e.p_s2 * g.sd[n]);
  return r;
}

Pairing finalize_pairing(std::span<const double> t, int n) {
  Pairing p;
  p.perm = max_weight_assignment(t, n);
  return p;
}

double recompute_rate(const Allocation& a, const GainSet& g) {
  g.validate();
  const std::size_t n = static_cast<std::size_t>(g.n());
  if (a.pairing.perm.size() != n || a.modes.relaying.size() != n ||
      a.powers.per_pair.size() != n)
    throw std::logic_error("recompute_rate: allocation does not match the gain set");
  if (!a.pairing.is_permutation())
    throw std::logic_error("recompute_rate: pairing is not a permutation");

  double sum = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const auto& e = a.powers.per_pair[m];
    if (!(e.p_s1 >= 0.0) || !(e.p_r >= 0.0) || !(e.p_s2 >= 0.0) || !std::isfinite(e.p_s1) ||
        !std::isfinite(e.p_r) || !std::isfinite(e.p_s2))
      throw std::logic_error("recompute_rate: powers must be finite and nonnegative");
    const bool relaying = a.modes.relaying[m] != 0;
    if (relaying && e.p_s2 != 0.0)
      throw std::logic_error("recompute_rate: relaying pair carries second-phase source power");
    if (!relaying && e.p_r != 0.0)
      throw std::logic_error("recompute_rate: idle pair carries relay power");
    if (a.scheme == Scheme::kSelectiveSum && e.p_s2 != 0.0)
      throw std::logic_error("recompute_rate: selective scheme forbids second-phase source power");
    sum += pair_rate(g, static_cast<int>(m), a.pairing.perm[m], e, relaying, a.scheme);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Selective DF under a sum budget. Dual decomposition: the row constraint
// (each listening subcarrier pairs once) is dualized with beta_m, the column
// constraint stays explicit, so every column picks its best row each
// iteration.
// ---------------------------------------------------------------------------

Allocation solve_selective_sum(const GainSet& gains, const PowerBudget& budget,
                               const SolverOptions& opts) {
  gains.validate();
  detail::validate_options(opts);
  if (!(budget.total >= 0.0) || !std::isfinite(budget.total))
    throw std::invalid_argument("solve_selective_sum: budget.total must be finite and >= 0");

  const int n = gains.n();
  const double p_t = budget.total;
  if (p_t == 0.0) return detail::zero_allocation(Scheme::kSelectiveSum, gains);

  const std::size_t nn = static_cast<std::size_t>(n) * n;
  std::vector<std::uint8_t> relay(nn);
  std::vector<double> eq(nn);
  for (int m = 0; m < n; ++m) {
    for (int j = 0; j < n; ++j) {
      const bool r = relay_useful(gains, m, j);
      relay[m * n + j] = r ? 1 : 0;
      eq[m * n + j] = equivalent_gain(gains, m, j, r);
    }
  }

  const double kInf = std::numeric_limits<double>::infinity();
  double alpha = std::max(opts.alpha_init, detail::kMultiplierFloor);
  const double alpha_hi =
      std::max(0.5 * n / p_t, detail::kMultiplierFloor);  // dual optimum lies below this
  std::vector<double> beta(n, opts.beta_init), beta_next(n);
  std::vector<double> t_val(nn), p_val(nn);
  std::vector<int> pick(n), row_hits(n);
  double best_dual = kInf;

  // Evaluates the dual objective at the current multipliers; fills the score
  // matrix and the per-column picks, returns the consumed power.
  auto evaluate = [&]() {
    std::fill(row_hits.begin(), row_hits.end(), 0);
    double colmax_sum = 0.0;
    double consumption = 0.0;
    for (int j = 0; j < n; ++j) {
      int best = 0;
      double best_v = -kInf;
      for (int m = 0; m < n; ++m) {
        const auto wt = detail::water_term(eq[m * n + j], alpha, p_t);
        const double tv = wt.value - beta[m];
        t_val[m * n + j] = tv;
        p_val[m * n + j] = wt.power;
        if (tv > best_v) {
          best_v = tv;
          best = m;
        }
      }
      pick[j] = best;
      row_hits[best]++;
      colmax_sum += best_v;
      consumption += p_val[best * n + j];
    }
    const double beta_sum = std::accumulate(beta.begin(), beta.end(), 0.0);
    best_dual = std::min(best_dual, colmax_sum + alpha * p_t + beta_sum);
    return consumption;
  };

  int iterations = 0;
  bool converged = false;
  for (int it = 1; it <= opts.max_iter; ++it) {
    iterations = it;
    const double consumption = evaluate();
    const double step = opts.step_scale / std::sqrt(static_cast<double>(it));
    const double alpha_next = detail::clampd(subgradient_step(alpha, step, p_t - consumption),
                                             detail::kMultiplierFloor, alpha_hi);
    for (int m = 0; m < n; ++m)
      beta_next[m] = subgradient_step(beta[m], step, 1.0 - row_hits[m]);
    const bool settled = detail::rel_change(alpha_next, alpha) < opts.eps &&
                         detail::rel_change(beta_next, beta) < opts.eps;
    alpha = alpha_next;
    beta.swap(beta_next);
    if (settled) {
      converged = true;
      break;
    }
  }
  evaluate();  // score matrix and dual bound at the settled multipliers

  Allocation out;
  out.scheme = Scheme::kSelectiveSum;
  out.pairing = finalize_pairing(t_val, n);
  out.modes.relaying.resize(n);
  out.powers.per_pair.resize(n);

  std::vector<double> lams(n);
  for (int m = 0; m < n; ++m) lams[m] = eq[m * n + out.pairing.perm[m]];
  const auto wf = waterfill_detailed(lams, p_t);
  for (int m = 0; m < n; ++m) {
    const int j = out.pairing.perm[m];
    const bool r = relay[m * n + j] != 0;
    out.modes.relaying[m] = r ? 1 : 0;
    const auto [s1, pr] = split_pair_power(gains, m, j, wf.powers[m], r);
    out.powers.per_pair[m] = {s1, pr, 0.0};
  }
  out.sum_rate = recompute_rate(out, gains);
  out.dual_value = best_dual;
  out.gap_estimate = best_dual - out.sum_rate;
  out.iterations = iterations;
  out.converged = converged;
  return out;
}

// ---------------------------------------------------------------------------
// Enhanced DF under a sum budget. Mirror-image dualization: the column
// constraint carries beta_n, each listening subcarrier picks its best relaying
// subcarrier, and the per-pair mode indicator follows the larger of the two
// dual rate contributions.
// ---------------------------------------------------------------------------

Allocation solve_enhanced_sum(const GainSet& gains, const PowerBudget& budget,
                              const SolverOptions& opts) {
  gains.validate();
  detail::validate_options(opts);
  if (!(budget.total >= 0.0) || !std::isfinite(budget.total))
    throw std::invalid_argument("solve_enhanced_sum: budget.total must be finite and >= 0");

  const int n = gains.n();
  const double p_t = budget.total;
  if (p_t == 0.0) return detail::zero_allocation(Scheme::kEnhancedSum, gains);

  const std::size_t nn = static_cast<std::size_t>(n) * n;
  std::vector<std::uint8_t> ok(nn);
  std::vector<double> lam1(nn);
  for (int m = 0; m < n; ++m) {
    for (int j = 0; j < n; ++j) {
      const bool r = detail::relay_split_realizable(gains, m, j);
      ok[m * n + j] = r ? 1 : 0;
      lam1[m * n + j] = r ? detail::relay_eq_gain(gains, m, j) : 0.0;
    }
  }

  const double kInf = std::numeric_limits<double>::infinity();
  double alpha = std::max(opts.alpha_init, detail::kMultiplierFloor);
  const double alpha_hi = std::max(static_cast<double>(n) / p_t, detail::kMultiplierFloor);
  std::vector<double> beta(n, opts.beta_init), beta_next(n);
  std::vector<double> t_val(nn), p1_val(nn);
  std::vector<std::uint8_t> rho(nn);
  std::vector<detail::WaterTerm> idle(n);
  std::vector<int> pick(n), col_hits(n);
  double best_dual = kInf;

  auto evaluate = [&]() {
    for (int j = 0; j < n; ++j) idle[j] = detail::water_term(gains.sd[j], alpha, p_t);
    std::fill(col_hits.begin(), col_hits.end(), 0);
    double rowmax_sum = 0.0;
    double consumption = 0.0;
    for (int m = 0; m < n; ++m) {
      int best = 0;
      double best_v = -kInf;
      for (int j = 0; j < n; ++j) {
        const std::size_t idx = static_cast<std::size_t>(m) * n + j;
        double rr = -kInf;
        if (ok[idx]) {
          const auto wt = detail::water_term(lam1[idx], alpha, p_t);
          rr = wt.value;
          p1_val[idx] = wt.power;
        }
        const double ri = idle[m].value + idle[j].value;
        const bool use_relay = rr > ri;
        rho[idx] = use_relay ? 1 : 0;
        const double tv = (use_relay ? rr : ri) - beta[j];
        t_val[idx] = tv;
        if (tv > best_v) {
          best_v = tv;
          best = j;
        }
      }
      pick[m] = best;
      col_hits[best]++;
      rowmax_sum += best_v;
      const std::size_t idx = static_cast<std::size_t>(m) * n + best;
      consumption += rho[idx] ? p1_val[idx] : idle[m].power + idle[best].power;
    }
    const double beta_sum = std::accumulate(beta.begin(), beta.end(), 0.0);
    best_dual = std::min(best_dual, rowmax_sum + alpha * p_t + beta_sum);
    return consumption;
  };

  int iterations = 0;
  bool converged = false;
  for (int it = 1; it <= opts.max_iter; ++it) {
    iterations = it;
    const double consumption = evaluate();
    const double step = opts.step_scale / std::sqrt(static_cast<double>(it));
    const double alpha_next = detail::clampd(subgradient_step(alpha, step, p_t - consumption),
                                             detail::kMultiplierFloor, alpha_hi);
    for (int j = 0; j < n; ++j)
      beta_next[j] = subgradient_step(beta[j], step, 1.0 - col_hits[j]);
    const bool settled = detail::rel_change(alpha_next, alpha) < opts.eps &&
                         detail::rel_change(beta_next, beta) < opts.eps;
    alpha = alpha_next;
    beta.swap(beta_next);
    if (settled) {
      converged = true;
      break;
    }
  }
  evaluate();

  Allocation out;
  out.scheme = Scheme::kEnhancedSum;
  out.pairing = finalize_pairing(t_val, n);
  const auto& perm = out.pairing.perm;

  std::vector<std::uint8_t> modes(n);
  for (int m = 0; m < n; ++m) modes[m] = rho[static_cast<std::size_t>(m) * n + perm[m]];

  // Water-fill the assembled channel list: a relaying pair is one equivalent
  // channel, an idle pair is two direct-link channels.
  std::vector<double> channels;
  channels.reserve(2 * n);
  auto build_channels = [&](const std::vector<std::uint8_t>& mv) {
    channels.clear();
    for (int m = 0; m < n; ++m) {
      if (mv[m]) {
        channels.push_back(lam1[static_cast<std::size_t>(m) * n + perm[m]]);
      } else {
        channels.push_back(gains.sd[m]);
        channels.push_back(gains.sd[perm[m]]);
      }
    }
  };

  Waterfiller scratch;
  build_channels(modes);
  double cur_rate = scratch.rate(channels, p_t);
  for (int pass = 0; pass < 3; ++pass) {
    bool improved = false;
    for (int m = 0; m < n; ++m) {
      const std::uint8_t alt = modes[m] ? 0 : 1;
      if (alt && !ok[static_cast<std::size_t>(m) * n + perm[m]]) continue;
      modes[m] = alt;
      build_channels(modes);
      const double alt_rate = scratch.rate(channels, p_t);
      if (alt_rate > cur_rate) {
        cur_rate = alt_rate;
        improved = true;
      } else {
        modes[m] = alt ? 0 : 1;
      }
    }
    if (!improved) break;
  }

  build_channels(modes);
  const auto wf = waterfill_detailed(channels, p_t);
  out.modes.relaying = modes;
  out.powers.per_pair.resize(n);
  std::size_t idx = 0;
  for (int m = 0; m < n; ++m) {
    if (modes[m]) {
      const auto [s1, pr] = split_pair_power(gains, m, perm[m], wf.powers[idx++], true);
      out.powers.per_pair[m] = {s1, pr, 0.0};
    } else {
      const double a = wf.powers[idx++];
      const double b = wf.powers[idx++];
      out.powers.per_pair[m] = {a, 0.0, b};
    }
  }
  out.sum_rate = recompute_rate(out, gains);

  // A selective allocation is enhanced-feasible with zero second-phase power,
  // so the enhanced result never falls below it.
  Allocation sel = solve_selective_sum(gains, budget, opts);
  if (sel.sum_rate > out.sum_rate) {
    out.pairing = sel.pairing;
    out.modes = sel.modes;
    out.powers = sel.powers;
    out.sum_rate = recompute_rate(out, gains);
  }

  out.dual_value = best_dual;
  out.gap_estimate = best_dual - out.sum_rate;
  out.iterations = iterations;
  out.converged = converged;
  return out;
}

Allocation solve(Scheme scheme, const GainSet& g, const PowerBudget& budget,
                 const SolverOptions& opts) {
  switch (scheme) {
    case Scheme::kSelectiveSum: return solve_selective_sum(g, budget, opts);
    case Scheme::kEnhancedSum: return solve_enhanced_sum(g, budget, opts);
    case Scheme::kEnhancedIndividual: return solve_enhanced_individual(g, budget, opts);
  }
  throw std::invalid_argument("solve: unknown scheme");
}

}  // namespace dfra
