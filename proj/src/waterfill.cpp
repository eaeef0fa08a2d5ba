#include "dfra/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dfra {

namespace {

// Water level over the inverse gains of the positive-gain channels, sorted
// ascending. Level theta_k = (budget + prefix_k)/k is valid for the largest k
// with theta_k > inv[k-1]; channels past k stay dry.
double solve_level(std::vector<double>& inv, double budget) {
  std::sort(inv.begin(), inv.end());
  double prefix = 0.0;
  double level = inv.empty() ? 0.0 : inv.front();  // budget 0: level touches the best floor
  for (std::size_t k = 0; k < inv.size(); ++k) {
    prefix += inv[k];
    const double cand = (budget + prefix) / static_cast<double>(k + 1);
    if (cand > inv[k]) level = cand;
  }
  return level;
}

}  // namespace

WaterfillResult waterfill_detailed(std::span<const double> gains, double budget) {
  if (!(budget >= 0.0)) throw std::invalid_argument("waterfill: budget must be >= 0");
  for (double g : gains)
    if (!(g >= 0.0) || !std::isfinite(g))
      throw std::invalid_argument("waterfill: gains must be finite and >= 0");

  std::vector<double> inv;
  inv.reserve(gains.size());
  for (double g : gains)
    if (g > 0.0) inv.push_back(1.0 / g);

  WaterfillResult res;
  res.level = solve_level(inv, budget);
  res.powers.resize(gains.size(), 0.0);
  for (std::size_t i = 0; i < gains.size(); ++i) {
    if (gains[i] > 0.0) res.powers[i] = std::max(0.0, res.level - 1.0 / gains[i]);
  }
  return res;
}

std::vector<double> waterfill(std::span<const double> gains, double budget) {
  return waterfill_detailed(gains, budget).powers;
}

double Waterfiller::rate(std::span<const double> gains, double budget) {
  inv_.clear();
  for (double g : gains)
    if (g > 0.0) inv_.push_back(1.0 / g);
  if (inv_.empty() || budget <= 0.0) return 0.0;

  const double level = solve_level(inv_, budget);
  double sum = 0.0;
  for (double v : inv_) {
    if (level > v) sum += std::log2(level / v);
  }
  return 0.5 * sum;
}

}  // namespace dfra
